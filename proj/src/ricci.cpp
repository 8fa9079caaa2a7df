#include "sympcy/ricci.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <cstring>
#include <vector>

#include "sympcy/spectral.hpp"
#include "sympcy/stable3.hpp"
#include "sympcy/util.hpp"

namespace sympcy {

namespace {

// d/dx_a with the exact shortcut d(constant) = 0, so flat backgrounds probe
// to exactly zero instead of FFT round-off.
void deriv_field(const Grid& g, const double* v, int axis, double* out) {
  const long long np = g.npts();
  if (!g.active(axis)) {
    std::memset(out, 0, static_cast<size_t>(np) * sizeof(double));
    return;
  }
  bool constant = true;
  for (long long p = 1; p < np; ++p)
    if (v[p] != v[0]) {
      constant = false;
      break;
    }
  if (constant) {
    std::memset(out, 0, static_cast<size_t>(np) * sizeof(double));
    return;
  }
  spectral_derivative(g, v, axis, out);
}

}  // namespace

double ricci_norm_of_metric(const SymMatField& g) {
  const Grid& gr = g.grid;
  const long long np = gr.npts();

  // dg[a*21 + idx(i,j)] = d g_ij / d x_a
  std::vector<std::vector<double>> dg(6 * 21);
  for (int a = 0; a < 6; ++a)
    for (int ij = 0; ij < 21; ++ij) {
      auto& slot = dg[a * 21 + ij];
      slot.resize(np);
      deriv_field(gr, g.v.data() + static_cast<size_t>(ij) * np, a, slot.data());
    }

  // Christoffel symbols, packed as gamma[k*21 + idx(i,j)].
  std::vector<std::vector<double>> gamma(6 * 21);
  for (auto& s : gamma) s.assign(np, 0.0);
  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      Mat6 G;
      for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) G(i, j) = G(j, i) = g.comp(i, j)[p];
      Mat6 Gi = G.inverse();
      for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
          const int ij = SymMatField::idx(i, j);
          for (int k = 0; k < 6; ++k) {
            double acc = 0.0;
            for (int l = 0; l < 6; ++l) {
              const double t = dg[i * 21 + SymMatField::idx(l, j)][p] +
                               dg[j * 21 + SymMatField::idx(l, i)][p] -
                               dg[l * 21 + SymMatField::idx(i, j)][p];
              acc += Gi(k, l) * t;
            }
            gamma[k * 21 + ij][p] = 0.5 * acc;
          }
        }
    }
  });

  // div[ij] = sum_k d Gamma^k_ij / d x_k
  std::vector<std::vector<double>> div(21);
  std::vector<double> tmp(np);
  for (int ij = 0; ij < 21; ++ij) {
    div[ij].assign(np, 0.0);
    for (int k = 0; k < 6; ++k) {
      deriv_field(gr, gamma[k * 21 + ij].data(), k, tmp.data());
      for (long long p = 0; p < np; ++p) div[ij][p] += tmp[p];
    }
  }

  // tr[i] = sum_k Gamma^k_ki and its derivatives dtr[j*6+i] = d tr_i / d x_j.
  std::vector<std::vector<double>> tr(6), dtr(36);
  for (int i = 0; i < 6; ++i) {
    tr[i].assign(np, 0.0);
    for (int k = 0; k < 6; ++k) {
      const auto& src = gamma[k * 21 + SymMatField::idx(k, i)];
      for (long long p = 0; p < np; ++p) tr[i][p] += src[p];
    }
  }
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      dtr[j * 6 + i].resize(np);
      deriv_field(gr, tr[i].data(), j, dtr[j * 6 + i].data());
    }

  // R_ij = div_ij - d_j tr_i + sum_l tr_l Gamma^l_ij - sum_kl Gamma^k_jl Gamma^l_ik
  std::vector<double> worst_at(np, 0.0);
  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      double w = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
          const int ij = SymMatField::idx(i, j);
          double r = div[ij][p] - dtr[j * 6 + i][p];
          for (int l = 0; l < 6; ++l) r += tr[l][p] * gamma[l * 21 + ij][p];
          for (int k = 0; k < 6; ++k)
            for (int l = 0; l < 6; ++l)
              r -= gamma[k * 21 + SymMatField::idx(j, l)][p] *
                   gamma[l * 21 + SymMatField::idx(i, k)][p];
          w = std::max(w, std::abs(r));
        }
      worst_at[p] = w;
    }
  });
  double worst = 0.0;
  for (long long p = 0; p < np; ++p) worst = std::max(worst, worst_at[p]);
  return worst;
}

RicciResult ricci_probe(const FormField& rho_t, const SymplecticFrame& fr) {
  RicciResult res;
  const Grid& gr = rho_t.grid;
  const long long np = gr.npts();
  SymMatField met(gr);
  std::vector<double> antis(np, 0.0);
  std::atomic<bool> all_complex{true};

  Mat6 W;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) W(i, j) = fr.omega_mat[i][j];

  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      StableAnalysis an = analyze(rho_t.at(p), fr);
      if (!an.complex_type) {
        all_complex.store(false, std::memory_order_relaxed);
        continue;
      }
      Mat6 G = W * (*an.J);
      double aw = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
          met.comp(i, j)[p] = 0.5 * (G(i, j) + G(j, i));
          aw = std::max(aw, 0.5 * std::abs(G(i, j) - G(j, i)));
        }
      antis[p] = aw;
    }
  });
  if (!all_complex.load()) return res;  // available = false

  res.available = true;
  double aw = 0.0;
  for (long long p = 0; p < np; ++p) aw = std::max(aw, antis[p]);
  res.antisym_worst = aw;
  res.trusted = aw <= 1e-8;
  res.ricci_norm = ricci_norm_of_metric(met);
  return res;
}

}  // namespace sympcy
