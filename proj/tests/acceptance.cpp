// Acceptance suite: eight criteria, one verdict line each.
// Usage: acceptance [N]  (run criterion N alone, or all when omitted).
// Exit code: number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "sympcy/calculus.hpp"
#include "sympcy/conventions.hpp"
#include "sympcy/diagnose.hpp"
#include "sympcy/equation.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/multiindex.hpp"
#include "sympcy/solver.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/stable3.hpp"
#include "sympcy/util.hpp"

using namespace sympcy;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

KForm random_form(std::mt19937_64& eng, int k) {
  KForm f(k);
  for (int i = 0; i < kDim[k]; ++i) f.c[i] = uniform_pm1(eng);
  return f;
}

FormField random_bandlimited0(std::mt19937_64& eng, const Grid& g, int kmax = 2) {
  FormField f(g, 0);
  for (long long p = 0; p < g.npts(); ++p) f.comp(0)[p] = uniform_pm1(eng);
  lowpass(g, f.comp(0), kmax);
  return f;
}

FormField random_bandlimited(std::mt19937_64& eng, const Grid& g, int k, int kmax = 2) {
  FormField f(g, k);
  for (int c = 0; c < f.ncomp(); ++c) {
    for (long long p = 0; p < g.npts(); ++p) f.comp(c)[p] = uniform_pm1(eng);
    lowpass(g, f.comp(c), kmax);
  }
  return f;
}

Mat6 jstd() {
  Mat6 J = Mat6::Zero();
  for (int b = 0; b < 3; ++b) {
    J(2 * b + 1, 2 * b) = 1.0;
    J(2 * b, 2 * b + 1) = -1.0;
  }
  return J;
}

FormField manufactured_phi(const Grid& g) {
  FormField phi(g, 0);
  for (long long p = 0; p < g.npts(); ++p) {
    const auto x = g.point(p);
    phi.comp(0)[p] = 0.05 * (std::cos(x[0]) + std::cos(x[1]) + std::cos(x[0] - x[2]));
  }
  const double mn = phi.mean(0);
  for (long long p = 0; p < g.npts(); ++p) phi.comp(0)[p] -= mn;
  return phi;
}

RHSData forward_rhs(const FormField& phi_star, const SymplecticFrame& fr,
                    const std::pair<FormField, FormField>& Om) {
  const auto def = deform(phi_star, Om, fr, +1);
  const FormField num = pairing_ratio_field(wedge_dealiased(def.first, def.second), fr);
  const FormField den = pairing_ratio_field(wedge_dealiased(Om.first, Om.second), fr);
  FormField F(phi_star.grid, 0);
  for (long long p = 0; p < phi_star.npts(); ++p)
    F.comp(0)[p] = std::log(num.comp(0)[p] / den.comp(0)[p]);
  return normalize_F(F, fr);
}

// ---------------------------------------------------------------- criterion 1
bool criterion1(std::string& note) {
  Timer tm;
  const SymplecticFrame fr = make_standard_frame();
  std::mt19937_64 eng(101);
  const int N = 10000;
  double d_wedge = 0, d_inter = 0, d_star = 0, d_pair = 0;
  for (int it = 0; it < N; ++it) {
    // graded anticommutativity a^b = (-1)^{ka kb} b^a
    {
      const int ka = static_cast<int>(eng() % 4);
      const int kb = static_cast<int>(eng() % (7 - ka));
      const KForm a = random_form(eng, ka), b = random_form(eng, kb);
      const double sgn = (ka * kb) % 2 == 0 ? 1.0 : -1.0;
      d_wedge = std::max(d_wedge, (wedge(a, b) - sgn * wedge(b, a)).maxnorm());
    }
    // interior antiderivation
    {
      const int ka = 1 + static_cast<int>(eng() % 3);
      const int kb = 1 + static_cast<int>(eng() % (5 - ka));
      const KForm a = random_form(eng, ka), b = random_form(eng, kb);
      Vec6 v;
      for (auto& x : v) x = uniform_pm1(eng);
      const KForm lhs = interior(v, wedge(a, b));
      KForm rhs = wedge(interior(v, a), b);
      rhs += (ka % 2 == 0 ? 1.0 : -1.0) * wedge(a, interior(v, b));
      d_inter = std::max(d_inter, (lhs - rhs).maxnorm());
    }
    // star involution
    {
      const int k = static_cast<int>(eng() % 7);
      const KForm a = random_form(eng, k);
      d_star = std::max(d_star, (star_s(fr, star_s(fr, a)) - a).maxnorm());
    }
    // defining pairing relation b ^ *a = G_k(b,a) vol
    {
      const int k = static_cast<int>(eng() % 7);
      const KForm a = random_form(eng, k), b = random_form(eng, k);
      const KForm top = wedge(b, star_s(fr, a));
      double g = 0;
      for (int ib = 0; ib < kDim[k]; ++ib)
        for (int ia = 0; ia < kDim[k]; ++ia)
          g += b.c[ib] * a.c[ia] * gk_pairing(fr, k, ib, ia);
      d_pair = std::max(d_pair, std::fabs(top.c[0] - g));
    }
  }
  const double secs = tm.seconds();
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "defects: wedge %.2e, interior %.2e, star %.2e, pairing %.2e; %.1fs", d_wedge,
                d_inter, d_star, d_pair, secs);
  note = buf;
  return d_wedge <= 1e-12 && d_inter <= 1e-12 && d_star <= 1e-12 && d_pair <= 1e-12 &&
         secs < 10.0;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2(std::string& note) {
  Timer tm;
  const SymplecticFrame fr = make_standard_frame();
  std::mt19937_64 eng(102);
  int accepted = 0;
  double d_j2 = 0, d_k2 = 0;
  while (accepted < 1000) {
    const KForm f = random_form(eng, 3);
    const StableAnalysis a = analyze(f, fr);
    if (!a.complex_type) continue;
    ++accepted;
    d_j2 = std::max(d_j2, ((*a.J) * (*a.J) + Mat6::Identity()).cwiseAbs().maxCoeff());
    d_k2 = std::max(d_k2, (a.K * a.K - a.lambda * Mat6::Identity()).cwiseAbs().maxCoeff());
  }
  const double lam123 = analyze(KForm::basis({1, 2, 3}), fr).lambda;
  const StableAnalysis r0 = analyze(rho0(), fr);
  const double jminus = (*r0.J - jstd()).cwiseAbs().maxCoeff();
  const double jplus = (*r0.J + jstd()).cwiseAbs().maxCoeff();
  const double j_match = std::min(jminus, jplus);  // standard J up to the pinned global sign
  const int realized_sign = jminus <= jplus ? +1 : -1;
  const double dual_def = std::min(((*r0.dual) - sigma0()).maxnorm(),
                                   ((*r0.dual) + sigma0()).maxnorm());
  const double secs = tm.seconds();
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "J^2 %.2e, K^2 %.2e over 1000 forms; lambda(e123) = %g; J(rho0) = %+d*J_std "
                "(defect %.2e); dual defect %.2e; %.1fs",
                d_j2, d_k2, lam123, realized_sign, j_match, dual_def, secs);
  note = buf;
  return d_j2 <= 1e-8 && d_k2 <= 1e-8 && lam123 == 0.0 && j_match == 0.0 && dual_def == 0.0 &&
         secs < 10.0;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3(std::string& note) {
  Timer tm;
  const Grid g({8, 8, 8, 8, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  std::mt19937_64 eng(103);
  double d_dd = 0, d_dsds = 0, d_anti = 0;
  for (int k = 1; k <= 5; ++k) {
    for (int rep = 0; rep < 2; ++rep) {
      const FormField f = random_bandlimited(eng, g, k);
      const double scale = std::max(1.0, f.maxnorm());
      if (k <= 4) {
        const FormField df = ext_d(f);
        d_dd = std::max(d_dd, ext_d(df).maxnorm() / std::max(1.0, df.maxnorm()));
      }
      if (k >= 2) {
        const FormField dsf = d_s(fr, f);
        d_dsds = std::max(d_dsds, d_s(fr, dsf).maxnorm() / std::max(1.0, dsf.maxnorm()));
      }
      const FormField anti = ext_d(d_s(fr, f)) + d_s(fr, ext_d(f));
      d_anti = std::max(d_anti, anti.maxnorm() / scale);
    }
  }
  const double secs = tm.seconds();
  char buf[256];
  std::snprintf(buf, sizeof buf, "relative defects: d^2 %.2e, (d^s)^2 %.2e, anticommutator %.2e; %.1fs",
                d_dd, d_dsds, d_anti, secs);
  note = buf;
  return d_dd <= 1e-10 && d_dsds <= 1e-10 && d_anti <= 1e-10 && secs < 30.0;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4(std::string& note) {
  const Grid g({4, 4, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  Mat6d H2{};
  for (int i = 0; i < 6; ++i) H2[i][i] = 2.0;  // phi = sum |z|^2 = sum x_i^2
  const FormField phi = FormField::scalar_analytic(g, Poly::quadratic(H2));
  const auto def = deform(phi, Om, fr, +1);
  FormField A = def.first - Om.first;    // dd^s(phi sigma)
  FormField B = Om.second - def.second;  // dd^s(phi rho)
  // Required values 3 rho / -3 sigma; measure against them and also report the
  // actual constants of proportionality.
  const FormField rho_f = FormField::constant(g, rho0());
  const FormField sig_f = FormField::constant(g, sigma0());
  const double want_a = (A - 3.0 * rho_f).maxnorm();
  const double want_b = (B + 3.0 * sig_f).maxnorm();
  // Actual multiples (exact component ratio at point 0).
  const double ca = A.at(0).c[Tables::get().rank_of[0b010101]];  // e135 coefficient
  const double cb = B.at(0).c[Tables::get().rank_of[0b100101]];  // e136 coefficient
  // dd^c phi = c_omega * omega, constancy of c_omega.
  const Mat6 J = -jstd();  // the complex structure realized by rho0
  const FormField ddc = ext_d(d_c(phi, J));
  const FormField omega_f = FormField::constant(g, omega_std());
  double c_omega = 0, var = 0;
  {
    // ratio on the e12 component
    const int r12 = Tables::get().rank_of[0b000011];
    c_omega = ddc.at(0).c[r12] / omega_f.at(0).c[r12];
    for (long long p = 0; p < g.npts(); ++p) {
      const KForm w = ddc.at(p) - c_omega * omega_f.at(p);
      var = std::max(var, w.maxnorm());
    }
  }
  const bool pass_a = want_a <= 1e-12 && want_b <= 1e-12;
  const bool pass_c = var <= 1e-12 && c_omega == conventions().c_omega;
  char buf[420];
  std::snprintf(buf, sizeof buf,
                "measured dd^s(phi sigma) = %+g rho, dd^s(phi rho) = %+g sigma (required +3/-3: "
                "defects %.2e/%.2e); the required constants hold exactly at phi/2; dd^c phi = "
                "%+g omega, constancy defect %.2e, ledger c_omega %+g",
                ca, cb, want_a, want_b, c_omega, var, conventions().c_omega);
  note = buf;
  return pass_a && pass_c;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5(std::string& note) {
  const ExpansionReport rep = expansion_oracle(120, 105);
  const bool taylor_ok = rep.decomposition_ok && rep.max_taylor_defect <= 1e-10;
  const bool pinned_ok = rep.L_at_2Id == 6.0 && rep.Q_at_2Id == 9.0;
  const bool kappa_ok = rep.kappa_fit_residual <= 1e-8;
  const bool candidate_settled = rep.candidate_1_16_confirmed || rep.candidate_1_16_residual > 0;
  char buf[420];
  std::snprintf(buf, sizeof buf,
                "Taylor defect %.2e over %d Hessians; measured L(2Id) = %g, Q(2Id) = %g "
                "(required 6 and 9; those values hold at H = Id: L = %g, Q = %g); kappa = %s "
                "(fit %.2e); candidate 1/16 %s (residual %.2e)",
                rep.max_taylor_defect, rep.samples, rep.L_at_2Id, rep.Q_at_2Id, rep.L_at_Id,
                rep.Q_at_Id, rep.kappa_exact.c_str(), rep.kappa_fit_residual,
                rep.candidate_1_16_confirmed ? "confirmed" : "refuted", rep.candidate_1_16_residual);
  note = buf;
  return taylor_ok && pinned_ok && kappa_ok && candidate_settled;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6(std::string& note) {
  const Grid g({8, 8, 8, 8, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = normalize_F(FormField::zeros(g, 0), fr);
  std::mt19937_64 eng(106);
  double worst = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const FormField phi = random_bandlimited0(eng, g);
    const FormField r = residual(phi, rhs, fr, Om);
    worst = std::max(worst, std::fabs(r.mean(0)) / std::max(1.0, r.maxnorm()));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "volume conservation defect %.2e over 20 potentials", worst);
  note = buf;
  return worst <= 1e-10;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7(std::string& note) {
  Timer tm;
  const Grid g({8, 8, 8, 8, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const FormField phi_star = manufactured_phi(g);
  const RHSData rhs = forward_rhs(phi_star, fr, Om);
  SolveOptions opts;
  const SolveReport rep = solve(rhs, fr, Om, opts);
  const double err = (rep.phi - phi_star).maxnorm();
  const double res = rep.residual_history.empty() ? 1e30 : rep.residual_history.back();
  // jvp vs central differences at a random point of the same problem
  std::mt19937_64 eng(107);
  const FormField p0 = random_bandlimited0(eng, g);
  const FormField psi = random_bandlimited0(eng, g);
  const FormField lin = jvp(p0, psi, rhs, fr, Om);
  const double h = 1e-5;
  const FormField fd =
      (residual(p0 + psi * h, rhs, fr, Om) - residual(p0 - psi * h, rhs, fr, Om)) * (0.5 / h);
  const double fd_rel = (lin - fd).maxnorm() / std::max(1.0, lin.maxnorm());
  const double secs = tm.seconds();
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "recovery error %.2e, final residual %.2e, %d Newton iterations, jvp-vs-FD %.2e, "
                "%.0fs",
                err, res, rep.iterations, fd_rel, secs);
  note = buf;
  return rep.converged && err <= 1e-6 && res <= 1e-9 && rep.iterations <= 12 && fd_rel <= 1e-6 &&
         secs < 300.0;
}

// ---------------------------------------------------------------- criterion 8
bool criterion8(std::string& note) {
  const Grid g({16, 16, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  // Baseline: phi = 0, F = 0 must give exact zeros.
  const RHSData rhs0 = normalize_F(FormField::zeros(g, 0), fr);
  const Diagnostics base = diagnose(FormField::zeros(g, 0), rhs0, fr, Om, true);
  const bool base_ok = base.residual_norm == 0.0 && base.duality_available &&
                       base.duality_worst == 0.0 && base.volume_conservation_defect == 0.0 &&
                       base.ricci_available && base.ricci_norm == 0.0;
  const std::vector<double> epss{0.005, 0.01, 0.02};
  std::vector<double> duality, ricci;
  bool finite = true, conv = true;
  for (const double eps : epss) {
    FormField F(g, 0);
    for (long long p = 0; p < g.npts(); ++p) F.comp(0)[p] = eps * std::cos(g.point(p)[0]);
    const RHSData rhs = normalize_F(F, fr);
    SolveOptions opts;
    const SolveReport rep = solve(rhs, fr, Om, opts);
    conv = conv && rep.converged;
    const Diagnostics& d = rep.diagnostics;
    for (const double v :
         {d.residual_norm, d.positivity_worst.min_eig, d.negativity_worst.max_eig,
          d.volume_conservation_defect, d.duality_worst, d.ricci_norm})
      finite = finite && std::isfinite(v);
    finite = finite && d.duality_available && d.ricci_available;
    duality.push_back(d.duality_worst);
    ricci.push_back(d.ricci_norm);
  }
  // Trend test: zero floor, or monotone with an affine fit in eps^2.
  auto trend = [&](const std::vector<double>& v, double& rel_defect) {
    double mx = 0;
    for (const double x : v) mx = std::max(mx, std::fabs(x));
    rel_defect = 0.0;
    if (mx <= 1e-9) return true;  // identically zero within solver tolerance
    const bool mono = (v[0] <= v[1] && v[1] <= v[2]) || (v[0] >= v[1] && v[1] >= v[2]);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 3; ++i) {
      const double x = epss[i] * epss[i];
      sx += x;
      sy += v[i];
      sxx += x * x;
      sxy += x * v[i];
    }
    const double den = 3.0 * sxx - sx * sx;
    const double b = (3.0 * sxy - sx * sy) / den;
    const double a = (sy - b * sx) / 3.0;
    for (int i = 0; i < 3; ++i)
      rel_defect = std::max(rel_defect, std::fabs(v[i] - (a + b * epss[i] * epss[i])) / mx);
    return mono && rel_defect <= 0.2;
  };
  double rd = 0, rr = 0;
  const bool t_dual = trend(duality, rd);
  const bool t_ricci = trend(ricci, rr);
  char buf[420];
  std::snprintf(buf, sizeof buf,
                "baseline zeros %s; duality_worst = {%.3e, %.3e, %.3e} (fit defect %.2f), "
                "ricci_norm = {%.3e, %.3e, %.3e} (fit defect %.2f)",
                base_ok ? "exact" : "VIOLATED", duality[0], duality[1], duality[2], rd, ricci[0],
                ricci[1], ricci[2], rr);
  note = buf;
  return base_ok && conv && finite && t_dual && t_ricci;
}

}  // namespace

int main(int argc, char** argv) {
  using CriterionFn = bool (*)(std::string&);
  const CriterionFn fns[8] = {criterion1, criterion2, criterion3, criterion4,
                              criterion5, criterion6, criterion7, criterion8};
  int lo = 1, hi = 8;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "usage: %s [1-8]\n", argv[0]);
      return 64;
    }
    lo = hi = n;
  }
  int failures = 0;
  for (int i = lo; i <= hi; ++i) {
    std::string note;
    const bool pass = fns[i - 1](note);
    std::printf("criterion %d: %s - %s\n", i, pass ? "PASS" : "FAIL", note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures;
}
