#include "sympcy/stable3.hpp"

#include <cmath>
#include <stdexcept>

namespace sympcy {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::positive: return "positive";
    case Verdict::negative: return "negative";
    case Verdict::indefinite: return "indefinite";
    default: return "not_stable";
  }
}

double form3_component(const KForm& rho, int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  int a[3] = {i, j, k};
  // sort 3 entries, tracking transposition parity
  int sign = 1;
  if (a[0] > a[1]) { std::swap(a[0], a[1]); sign = -sign; }
  if (a[1] > a[2]) { std::swap(a[1], a[2]); sign = -sign; }
  if (a[0] > a[1]) { std::swap(a[0], a[1]); sign = -sign; }
  std::uint8_t m = static_cast<std::uint8_t>((1u << a[0]) | (1u << a[1]) | (1u << a[2]));
  return sign * rho.c[Tables::get().rank_of[m]];
}

StableAnalysis analyze(const KForm& rho, const SymplecticFrame& f) {
  if (rho.degree != 3) throw std::invalid_argument("analyze: need a 3-form");
  const Tables& T = Tables::get();
  StableAnalysis out;
  const double volc = f.vol.c[0];

  // iota_{e_b} vol = s_b * volc * e_{complement of b},  s_b = (-1)^b (0-based).
  for (int a = 0; a < 6; ++a) {
    KForm mu = wedge(interior_axis(a, rho), rho);  // degree 5
    for (int b = 0; b < 6; ++b) {
      std::uint8_t mc = static_cast<std::uint8_t>(0x3f & ~(1u << b));
      double sb = (b & 1) ? -1.0 : 1.0;
      out.K(b, a) = mu.c[T.rank_of[mc]] / (sb * volc);
    }
  }

  out.lambda = (out.K * out.K).trace() / 6.0;
  const double nr = rho.maxnorm();
  out.stable = std::fabs(out.lambda) > 1e-10 * nr * nr * nr * nr && nr > 0;
  out.complex_type = out.stable && out.lambda < 0;
  if (out.complex_type) {
    Mat6 J = out.K / std::sqrt(-out.lambda);
    out.J = J;
    // Single-slot action: (J rho)(X,Y,Z) = rho(JX, Y, Z).
    KForm dual(3);
    for (int r = 0; r < kDim[3]; ++r) {
      std::uint8_t m = T.mask_of[3][r];
      int ax[3], nax = 0;
      for (int i = 0; i < 6; ++i)
        if (m & (1u << i)) ax[nax++] = i;
      double acc = 0;
      for (int mm = 0; mm < 6; ++mm)
        acc += J(mm, ax[0]) * form3_component(rho, mm, ax[1], ax[2]);
      dual.c[r] = acc;
    }
    out.dual = dual;
  }
  return out;
}

Positivity classify(const KForm& rho, const SymplecticFrame& f, double tol) {
  Positivity p;
  p.primitive_defect = wedge(f.omega, rho).maxnorm();
  StableAnalysis an = analyze(rho, f);
  if (!an.complex_type) {
    p.verdict = Verdict::not_stable;
    return p;
  }
  Mat6 W;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) W(i, j) = f.omega_mat[i][j];
  Mat6 M = W * (*an.J);  // g(e_i, e_j) = omega(e_i, J e_j)
  p.taming = 0.5 * (M + M.transpose());
  p.antisym_defect = (0.5 * (M - M.transpose())).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat6> es(p.taming);
  p.min_eig = es.eigenvalues().minCoeff();
  p.max_eig = es.eigenvalues().maxCoeff();
  const bool shape_ok = p.primitive_defect <= tol && p.antisym_defect <= tol;
  if (shape_ok && p.min_eig >= -tol)
    p.verdict = Verdict::positive;
  else if (shape_ok && p.max_eig <= tol)
    p.verdict = Verdict::negative;
  else
    p.verdict = Verdict::indefinite;
  return p;
}

double duality_defect(const KForm& rho, const KForm& sigma, const SymplecticFrame& f) {
  StableAnalysis an = analyze(rho, f);
  if (!an.complex_type)
    throw std::domain_error("duality_defect: rho is not stable of complex type");
  const KForm& d = *an.dual;
  double den = d.maxnorm();
  return (d - sigma).maxnorm() / den;
}

}  // namespace sympcy
