#include "sympcy/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sympcy/conventions.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/util.hpp"

namespace sympcy {

FormField jvp(const FormField& phi, const FormField& psi, const RHSData&,
              const SymplecticFrame& fr, const std::pair<FormField, FormField>& Omega) {
  auto def = deform(phi, Omega, fr, +1);
  FormField A = ext_d(d_s(fr, mul_scalar(psi, Omega.second)));
  FormField B = ext_d(d_s(fr, mul_scalar(psi, Omega.first)));
  FormField pr = pairing_ratio_field(wedge_dealiased(A, def.second), fr);
  pr -= pairing_ratio_field(wedge_dealiased(def.first, B), fr);
  return pr;
}

void SpectralPrecond::apply_inverse(const double* in, double* out) const {
  auto c = fft_coeffs(grid, in);
  for (size_t k = 0; k < c.size(); ++k) c[k] = dead[k] ? 0.0 : c[k] / m[k];
  ifft_values(grid, c, out);
}

void SpectralPrecond::project(const double* in, double* out) const {
  auto c = fft_coeffs(grid, in);
  for (size_t k = 0; k < c.size(); ++k)
    if (dead[k]) c[k] = 0.0;
  ifft_values(grid, c, out);
}

SpectralPrecond build_precond(const SymplecticFrame& fr,
                              const std::pair<FormField, FormField>& Omega, const Grid& g) {
  SpectralPrecond pc;
  pc.grid = g;
  const long long np = g.npts();
  FormField delta = FormField::zeros(g, 0);
  delta.comp(0)[0] = 1.0;
  RHSData dummy;
  dummy.F = FormField::zeros(g, 0);
  dummy.normalized = true;
  FormField w = jvp(FormField::zeros(g, 0), delta, dummy, fr, Omega);
  auto c = fft_coeffs(g, w.comp(0));
  pc.m.resize(c.size());
  for (size_t k = 0; k < c.size(); ++k) pc.m[k] = static_cast<double>(np) * c[k].real();
  double maxm = 0.0;
  for (double v : pc.m) maxm = std::max(maxm, std::abs(v));
  if (maxm == 0.0) throw std::logic_error("build_precond: vanishing linearization");
  pc.dead.resize(c.size());
  for (size_t k = 0; k < c.size(); ++k) pc.dead[k] = std::abs(pc.m[k]) <= 1e-10 * maxm ? 1 : 0;
  return pc;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

// Restarted GMRES on op (right-preconditioned system already folded into op).
// Returns the approximate solution of op(y) = b.
std::vector<double> gmres(const std::function<std::vector<double>(const std::vector<double>&)>& op,
                          const std::vector<double>& b, double tol, int restart, int maxit) {
  const size_t n = b.size();
  std::vector<double> y(n, 0.0);
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) return y;
  int it = 0;
  while (it < maxit) {
    std::vector<double> r = op(y);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = nrm2(r);
    if (beta <= tol * bnorm) break;
    const int m = std::min(restart, maxit - it);
    std::vector<std::vector<double>> V;
    V.reserve(m + 1);
    std::vector<double> v0(r);
    for (size_t i = 0; i < n; ++i) v0[i] /= beta;
    V.push_back(std::move(v0));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m, 0.0), sn(m, 0.0), s(m + 1, 0.0);
    s[0] = beta;
    int k = 0;
    for (; k < m; ++k) {
      std::vector<double> w = op(V[k]);
      for (int i = 0; i <= k; ++i) {
        H[i][k] = dot(w, V[i]);
        axpy(-H[i][k], V[i], w);
      }
      H[k + 1][k] = nrm2(w);
      if (H[k + 1][k] > 0.0) {
        for (size_t i = 0; i < n; ++i) w[i] /= H[k + 1][k];
        V.push_back(std::move(w));
      }
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H[i][k] + sn[i] * H[i + 1][k];
        H[i + 1][k] = -sn[i] * H[i][k] + cs[i] * H[i + 1][k];
        H[i][k] = t;
      }
      const double denom = std::hypot(H[k][k], H[k + 1][k]);
      if (denom == 0.0) {
        ++k;
        break;
      }
      cs[k] = H[k][k] / denom;
      sn[k] = H[k + 1][k] / denom;
      H[k][k] = denom;
      H[k + 1][k] = 0.0;
      s[k + 1] = -sn[k] * s[k];
      s[k] = cs[k] * s[k];
      ++it;
      if (std::abs(s[k + 1]) <= tol * bnorm || static_cast<int>(V.size()) <= k + 1) {
        ++k;
        break;
      }
    }
    // Back-substitute the k x k triangular system.
    std::vector<double> alpha(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double t = s[i];
      for (int j = i + 1; j < k; ++j) t -= H[i][j] * alpha[j];
      alpha[i] = (H[i][i] != 0.0) ? t / H[i][i] : 0.0;
    }
    for (int i = 0; i < k; ++i) axpy(alpha[i], V[i], y);
    if (k < m) break;  // converged or breakdown inside the cycle
  }
  return y;
}

// Iterated mean subtraction: drives the discrete mean as close to zero as
// double precision permits (bitwise zero when it can be reached).
void gauge_fix(FormField& phi) {
  for (int pass = 0; pass < 4; ++pass) {
    const double mn = phi.mean(0);
    if (mn == 0.0) return;
    double* v = phi.comp(0);
    for (long long p = 0; p < phi.npts(); ++p) v[p] -= mn;
  }
}

bool stable_everywhere(const FormField& rho_t, const SymplecticFrame& fr) {
  const long long np = rho_t.npts();
  std::vector<char> ok(np, 1);
  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p)
      ok[p] = analyze(rho_t.at(p), fr).complex_type ? 1 : 0;
  });
  for (long long p = 0; p < np; ++p)
    if (!ok[p]) return false;
  return true;
}

}  // namespace

SolveReport solve(const RHSData& rhs, const SymplecticFrame& fr,
                  const std::pair<FormField, FormField>& Omega, const SolveOptions& opts) {
  if (!rhs.normalized) throw std::invalid_argument("solve: rhs not normalized");
  if (opts.max_newton < 1 || opts.newton_tol <= 0 || opts.krylov_tol <= 0 ||
      opts.continuation_steps < 1)
    throw std::invalid_argument("solve: bad options");
  const Grid& g = rhs.F.grid;
  const long long np = g.npts();

  SolveReport rep;
  rep.phi = FormField::zeros(g, 0);
  if (opts.seed_phi) {
    if (!(opts.seed_phi->grid == g) || opts.seed_phi->degree != 0)
      throw std::invalid_argument("solve: seed_phi grid/degree mismatch");
    rep.phi = *opts.seed_phi;
    rep.phi.ana.reset();
  }
  gauge_fix(rep.phi);

  SpectralPrecond pc = build_precond(fr, Omega, g);
  rep.converged = true;
  rep.stop_reason = "converged";

  for (int cstep = 1; cstep <= opts.continuation_steps; ++cstep) {
    const double t = static_cast<double>(cstep) / opts.continuation_steps;
    RHSData rhs_t;
    if (cstep == opts.continuation_steps) {
      rhs_t = rhs;
    } else {
      FormField Ft = rhs.F;
      Ft *= t;
      rhs_t = normalize_F(Ft, fr);
    }

    bool stage_done = false;
    std::vector<double> recent;  // residual norms for stagnation detection
    while (!stage_done) {
      FormField res = residual(rep.phi, rhs_t, fr, Omega);
      const double rnorm = res.maxnorm();
      rep.residual_history.push_back(rnorm);
      if (rnorm <= opts.newton_tol) {
        stage_done = true;
        break;
      }
      if (rep.iterations >= opts.max_newton) {
        rep.converged = false;
        rep.stop_reason = "max Newton iterations reached";
        break;
      }
      recent.push_back(rnorm);
      if (recent.size() >= 6) {
        const double prev = recent[recent.size() - 6];
        if ((prev - rnorm) / prev < 1e-3) {
          rep.converged = false;
          rep.stop_reason = "stagnation: relative residual drop < 1e-3 over 5 steps";
          break;
        }
      }

      // Right-preconditioned Newton step: (J M^-1) y = -r, dphi = M^-1 y.
      std::vector<double> b(np);
      {
        std::vector<double> negr(res.comp(0), res.comp(0) + np);
        for (auto& v : negr) v = -v;
        pc.project(negr.data(), b.data());
      }
      auto op = [&](const std::vector<double>& y) {
        FormField z = FormField::zeros(g, 0);
        pc.apply_inverse(y.data(), z.comp(0));
        FormField w = jvp(rep.phi, z, rhs_t, fr, Omega);
        std::vector<double> out(np);
        pc.project(w.comp(0), out.data());
        return out;
      };
      std::vector<double> y = gmres(op, b, opts.krylov_tol, opts.gmres_restart, opts.gmres_maxit);
      FormField dphi = FormField::zeros(g, 0);
      pc.apply_inverse(y.data(), dphi.comp(0));

      double step = 1.0;
      bool accepted = false;
      const int max_halvings = opts.damping == SolveOptions::Damping::none ? 1 : 20;
      for (int h = 0; h < max_halvings; ++h) {
        FormField trial = rep.phi;
        FormField sd = dphi;
        sd *= step;
        trial += sd;
        gauge_fix(trial);
        const double tn = residual(trial, rhs_t, fr, Omega).maxnorm();
        if (tn < rnorm || opts.damping == SolveOptions::Damping::none) {
          rep.phi = std::move(trial);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        rep.converged = false;
        rep.stop_reason = "line search failed to reduce the residual";
        break;
      }
      rep.step_sizes.push_back(step);
      ++rep.iterations;
      if (!stable_everywhere(deform(rep.phi, Omega, fr, +1).first, fr)) rep.stability_flag = true;
    }
    if (!rep.converged) break;
  }

  gauge_fix(rep.phi);
  rep.diagnostics = diagnose(rep.phi, rhs, fr, Omega, opts.with_ricci);
  return rep;
}

nlohmann::ordered_json solve_report_json(const SolveReport& rep) {
  nlohmann::ordered_json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["stop_reason"] = rep.stop_reason;
  j["stability_flag"] = rep.stability_flag;
  j["residual_history"] = rep.residual_history;
  j["step_sizes"] = rep.step_sizes;
  j["phi_mean"] = rep.phi.mean(0);
  j["phi_maxnorm"] = rep.phi.maxnorm();
  j["diagnostics"] = diagnostics_json(rep.diagnostics);
  j["conventions"] = conventions_json();
  return j;
}

}  // namespace sympcy
