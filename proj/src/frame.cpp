#include "sympcy/frame.hpp"

#include <Eigen/Dense>
#include <bit>
#include <stdexcept>

namespace sympcy {

namespace {

// det of the k x k submatrix P[rows x cols], rows/cols given as masks.
double subdet(const Eigen::Matrix<double, 6, 6>& P, std::uint8_t rows, std::uint8_t cols, int k) {
  Eigen::MatrixXd sub(k, k);
  int r = 0;
  for (int i = 0; i < kAxes; ++i) {
    if (!(rows & (1u << i))) continue;
    int cix = 0;
    for (int j = 0; j < kAxes; ++j) {
      if (!(cols & (1u << j))) continue;
      sub(r, cix++) = P(i, j);
    }
    ++r;
  }
  if (k == 0) return 1.0;
  return sub.determinant();
}

}  // namespace

SymplecticFrame make_frame(const KForm& omega, bool inject_star_sign_error) {
  if (omega.degree != 2) throw std::invalid_argument("make_frame: omega must have degree 2");
  const Tables& T = Tables::get();
  SymplecticFrame f;
  f.omega = omega;

  Eigen::Matrix<double, 6, 6> W = Eigen::Matrix<double, 6, 6>::Zero();
  for (int r = 0; r < kDim[2]; ++r) {
    std::uint8_t m = T.mask_of[2][r];
    int i = std::countr_zero(static_cast<unsigned>(m));
    int j = std::countr_zero(static_cast<unsigned>(m & (m - 1)));
    W(i, j) = omega.c[r];
    W(j, i) = -omega.c[r];
  }

  f.vol = wedge(wedge(omega, omega), omega) * (1.0 / 6.0);
  double volc = f.vol.c[0];
  if (std::fabs(volc) < 1e-14) throw std::invalid_argument("make_frame: omega is degenerate");
  f.orientation = volc > 0 ? +1 : -1;

  Eigen::Matrix<double, 6, 6> Winv = W.inverse();
  // Poisson pairing on covectors: P = -(omega_matrix)^{-1}.
  Eigen::Matrix<double, 6, 6> P = -Winv;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      f.omega_mat[i][j] = W(i, j);
      f.omega_inv[i][j] = Winv(i, j);
    }

  // Solve b ^ star(a) = G_k(b,a) vol on basis pairs: with b = e_I the only
  // contributing row of star(a) is the complement I^c, and e_I ^ e_{I^c} =
  // eps(I,I^c) e^{123456} = eps(I,I^c) vol / vol_coeff, so
  //   star(e_A)[I^c] = eps(I, I^c) * G_k(I, A) * vol_coeff.
  for (int k = 0; k <= 6; ++k) {
    f.star[k].assign(static_cast<size_t>(kDim[6 - k]) * kDim[k], 0.0);
    for (int ri = 0; ri < kDim[k]; ++ri) {
      std::uint8_t mi = T.mask_of[k][ri];
      std::uint8_t mc = static_cast<std::uint8_t>(0x3f & ~mi);
      int rowc = T.rank_of[mc];
      double eps = T.merge_sign[mi][mc];  // +-1
      for (int ra = 0; ra < kDim[k]; ++ra) {
        double g = subdet(P, mi, T.mask_of[k][ra], k);
        f.star[k][static_cast<size_t>(rowc) * kDim[k] + ra] = eps * g * volc;
      }
    }
  }
  if (inject_star_sign_error)
    for (auto& v : f.star[2]) v = -v;
  return f;
}

SymplecticFrame make_standard_frame(bool inject_star_sign_error) {
  return make_frame(omega_std(), inject_star_sign_error);
}

KForm star_s(const SymplecticFrame& f, const KForm& a) {
  const int k = a.degree;
  KForm out(6 - k);
  const auto& S = f.star[k];
  for (int r = 0; r < kDim[6 - k]; ++r) {
    double acc = 0;
    for (int cix = 0; cix < kDim[k]; ++cix) acc += S[static_cast<size_t>(r) * kDim[k] + cix] * a.c[cix];
    out.c[r] = acc;
  }
  return out;
}

double pairing_ratio(const KForm& top, const SymplecticFrame& f) {
  if (top.degree != 6) throw std::invalid_argument("pairing_ratio: need a 6-form");
  return top.c[0] / f.vol.c[0];
}

double gk_pairing(const SymplecticFrame& f, int k, int rank_b, int rank_a) {
  const Tables& T = Tables::get();
  Eigen::Matrix<double, 6, 6> P;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) P(i, j) = -f.omega_inv[i][j];
  return subdet(P, T.mask_of[k][rank_b], T.mask_of[k][rank_a], k);
}

}  // namespace sympcy
