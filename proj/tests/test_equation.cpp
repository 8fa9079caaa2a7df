// The deformed-volume equation: pinned constants at the flat model potential,
// normalization, residual structure, and the exact-rational expansion oracle.
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sympcy/calculus.hpp"
#include "sympcy/conventions.hpp"
#include "sympcy/diagnose.hpp"
#include "sympcy/equation.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/solver.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/util.hpp"

using namespace sympcy;

namespace {

Mat6d ident(double s) {
  Mat6d H{};
  for (int i = 0; i < 6; ++i) H[i][i] = s;
  return H;
}

RHSData zero_rhs(const Grid& g, const SymplecticFrame& fr) {
  return normalize_F(FormField::zeros(g, 0), fr);
}

FormField random_bandlimited0(std::mt19937_64& eng, const Grid& g) {
  FormField f(g, 0);
  for (long long p = 0; p < g.npts(); ++p) f.comp(0)[p] = uniform_pm1(eng);
  lowpass(g, f.comp(0), 2);
  return f;
}

}  // namespace

TEST_CASE("conventions ledger carries the computed constants") {
  const Conventions& cv = conventions();
  CHECK(cv.c_rho_sigma == 4.0);
  CHECK(cv.c_omega == -4.0);
  CHECK(cv.kappa == 0.25);
  CHECK(cv.kappa_exact == "1/4");
  CHECK(cv.j_sign == 1);
  CHECK(cv.lambda_rho0 == -4.0);
  CHECK(cv.dds_phi_sigma_coeff == 6.0);
  CHECK(cv.dds_phi_rho_coeff == -6.0);
}

TEST_CASE("flat model potential: deformation constants, exact") {
  // Oracle first: phi = sum x_i^2 has Hessian 2 Id.
  tor::Mat6Q H2{};
  for (int i = 0; i < 6; ++i) H2[i][i] = tor::Q(2);
  const tor::CForm A = tor::dds_times(tor::quadratic(H2), tor::sigma0());
  const tor::CForm B = tor::dds_times(tor::quadratic(H2), tor::rho0());
  CHECK(tor::c_equal(A, tor::c_scale(tor::Q(6), tor::rho0())));
  CHECK(tor::c_equal(B, tor::c_scale(tor::Q(-6), tor::sigma0())));
  // Half potential phi = (1/2) sum x_i^2: the 3 rho / -3 sigma point.
  tor::Mat6Q H1{};
  for (int i = 0; i < 6; ++i) H1[i][i] = tor::Q(1);
  CHECK(tor::c_equal(tor::dds_times(tor::quadratic(H1), tor::sigma0()),
                     tor::c_scale(tor::Q(3), tor::rho0())));
  CHECK(tor::c_equal(tor::dds_times(tor::quadratic(H1), tor::rho0()),
                     tor::c_scale(tor::Q(-3), tor::sigma0())));
  // Intrinsic ratios at both points: 49 = (1+6)^2 and 16 = (1+3)^2.
  CHECK(tor::intrinsic_ratio(H2) == tor::Q(49));
  CHECK(tor::intrinsic_ratio(H1) == tor::Q(16));

  // Production analytic pipeline.
  const Grid g({4, 4, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const FormField phi_full = FormField::scalar_analytic(g, Poly::quadratic(ident(2.0)));
  const auto [rt, st] = deform(phi_full, Om, fr, +1);
  for (long long p = 0; p < g.npts(); ++p) {
    CHECK((rt.at(p) - 7.0 * rho0()).maxnorm() == 0.0);
    CHECK((st.at(p) - 7.0 * sigma0()).maxnorm() == 0.0);
  }
  // residual(phi_full, F=0) = 48 * c_rho_sigma pointwise (ratio 49c - c).
  const RHSData rhs = zero_rhs(g, fr);
  const FormField r = residual(phi_full, rhs, fr, Om);
  for (long long p = 0; p < g.npts(); ++p)
    CHECK(std::fabs(r.comp(0)[p] - 48.0 * conventions().c_rho_sigma) <= 1e-9);
  const FormField rhalf =
      residual(FormField::scalar_analytic(g, Poly::quadratic(ident(1.0))), rhs, fr, Om);
  for (long long p = 0; p < g.npts(); ++p)
    CHECK(std::fabs(rhalf.comp(0)[p] - 15.0 * conventions().c_rho_sigma) <= 1e-9);
}

TEST_CASE("residual at phi = 0 with F = 0 is exactly zero") {
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField r = residual(FormField::zeros(g, 0), rhs, fr, Om);
  CHECK(r.maxnorm() == 0.0);
}

TEST_CASE("residual is invariant under constant shifts of phi") {
  std::mt19937_64 eng(41);
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField phi = random_bandlimited0(eng, g);
  FormField shifted = phi;
  for (long long p = 0; p < g.npts(); ++p) shifted.comp(0)[p] += 0.37;
  const FormField a = residual(phi, rhs, fr, Om);
  const FormField b = residual(shifted, rhs, fr, Om);
  CHECK((a - b).maxnorm() <= 1e-12 * std::max(1.0, a.maxnorm()));
}

TEST_CASE("residual minus its affine part is exactly quadratic in phi") {
  std::mt19937_64 eng(42);
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField phi = random_bandlimited0(eng, g);
  const FormField r0 = residual(FormField::zeros(g, 0), rhs, fr, Om);
  const FormField r1 = residual(phi, rhs, fr, Om);
  const FormField r2 = residual(phi * 2.0, rhs, fr, Om);
  const FormField rh = residual(phi * 0.5, rhs, fr, Om);
  // r(t) = r0 + t a + t^2 b  =>  r(2) - 2 r(1) + r0 = 2 b, r(1/2) checked
  FormField b2 = r2 - r1 * 2.0 + r0;       // = 2 b
  FormField a1 = r1 - r0 - b2 * 0.5;       // = a
  FormField pred = r0 + a1 * 0.5 + b2 * 0.125;
  CHECK((rh - pred).maxnorm() <= 1e-11 * std::max(1.0, r2.maxnorm()));
}

TEST_CASE("scalar ansatz is contained in the two-potential residual") {
  std::mt19937_64 eng(43);
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField phi = random_bandlimited0(eng, g);
  const FormField alpha = mul_scalar(phi, Om.second);
  FormField beta = mul_scalar(phi, Om.first);
  beta *= -1.0;
  const FormField a = residual(phi, rhs, fr, Om);
  const FormField b = residual_nonscalar(alpha, beta, rhs, fr, Om);
  CHECK((a - b).maxnorm() <= 1e-12 * std::max(1.0, a.maxnorm()));
}

TEST_CASE("volume conservation: the residual has exactly zero mean") {
  std::mt19937_64 eng(44);
  const Grid g = Grid({8, 8, 8, 8, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  for (int rep = 0; rep < 5; ++rep) {
    const FormField phi = random_bandlimited0(eng, g);
    const FormField r = residual(phi, rhs, fr, Om);
    CHECK(std::fabs(r.mean(0)) <= 1e-10 * std::max(1.0, r.maxnorm()));
  }
}

TEST_CASE("normalize_F: Bessel value of the shift for 0.1 sin x1") {
  const Grid g({64, 1, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  FormField F(g, 0);
  for (long long p = 0; p < g.npts(); ++p) F.comp(0)[p] = 0.1 * std::sin(g.point(p)[0]);
  const RHSData rhs = normalize_F(F, fr);
  // mean over the circle of e^{0.1 sin x} = I_0(0.1); 64 points is far past
  // convergence of the trapezoid rule for an entire integrand.
  const double expect = std::log(std::cyl_bessel_i(0.0, 0.1));
  CHECK(std::fabs(rhs.normalization_shift - expect) <= 1e-10);
  // after normalization the discrete mean of e^F is exactly 1
  const FormField eF = exp_field(rhs.F);
  CHECK(std::fabs(eF.mean(0) - 1.0) <= 1e-14);
  // overflow guard
  FormField big(g, 0);
  for (long long p = 0; p < g.npts(); ++p) big.comp(0)[p] = 800.0;
  CHECK_THROWS_AS(normalize_F(big, fr), std::invalid_argument);
}

TEST_CASE("jvp at zero is 4 Laplace") {
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  FormField psi(g, 0);
  for (long long p = 0; p < g.npts(); ++p)
    psi.comp(0)[p] = std::cos(g.point(p)[0]) + std::cos(2.0 * g.point(p)[1]);
  const FormField got = jvp(FormField::zeros(g, 0), psi, rhs, fr, Om);
  double worst = 0;
  for (long long p = 0; p < g.npts(); ++p) {
    const double lap = -std::cos(g.point(p)[0]) - 4.0 * std::cos(2.0 * g.point(p)[1]);
    worst = std::max(worst, std::fabs(got.comp(0)[p] - 4.0 * lap));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("jvp matches central differences") {
  std::mt19937_64 eng(45);
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField phi = random_bandlimited0(eng, g);
  const FormField psi = random_bandlimited0(eng, g);
  const FormField lin = jvp(phi, psi, rhs, fr, Om);
  const double h = 1e-5;
  const FormField rp = residual(phi + psi * h, rhs, fr, Om);
  const FormField rm = residual(phi - psi * h, rhs, fr, Om);
  const FormField fd = (rp - rm) * (0.5 / h);
  CHECK((lin - fd).maxnorm() <= 1e-6 * std::max(1.0, lin.maxnorm()));
}

TEST_CASE("jvp is exact for the quadratic residual (Taylor identity)") {
  std::mt19937_64 eng(46);
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const FormField phi = random_bandlimited0(eng, g);
  const FormField psi = random_bandlimited0(eng, g);
  // residual(phi+psi) = residual(phi) + jvp(phi,psi) + [residual(psi) - residual(0) - jvp(0,psi)]
  const FormField lhs = residual(phi + psi, rhs, fr, Om);
  const FormField quad = residual(psi, rhs, fr, Om) - residual(FormField::zeros(g, 0), rhs, fr, Om) -
                         jvp(FormField::zeros(g, 0), psi, rhs, fr, Om);
  const FormField rhs_sum = residual(phi, rhs, fr, Om) + jvp(phi, psi, rhs, fr, Om) + quad;
  CHECK((lhs - rhs_sum).maxnorm() <= 1e-11 * std::max(1.0, lhs.maxnorm()));
}

TEST_CASE("local polynomial pinned values and kappa = 1/4") {
  CHECK(local_poly(ident(2.0)) == 144.0);
  CHECK(local_poly(ident(1.0)) == 36.0);
  // Q(H) from the exact oracle ratio at a mixed Hessian equals local/4.
  tor::Mat6Q H{};
  H[0][0] = tor::Q(3, 2);
  H[0][2] = H[2][0] = tor::Q(-3, 4);
  H[1][3] = H[3][1] = tor::Q(1, 2);
  H[4][4] = tor::Q(-1);
  // r(t) = 1 + t L + t^2 Q exactly; extract Q = (r(2) - 2 r(1) + 1)/2.
  tor::Mat6Q H2 = H;
  for (auto& row : H2)
    for (auto& e : row) e = e * tor::Q(2);
  const tor::Q r1 = tor::intrinsic_ratio(H);
  const tor::Q r2 = tor::intrinsic_ratio(H2);
  const tor::Q Qq = (r2 - r1 * tor::Q(2) + tor::Q(1)) / tor::Q(2);
  const tor::Q Lq = r1 - tor::Q(1) - Qq;
  // L = tr H
  CHECK(Lq == H[0][0] + H[1][1] + H[2][2] + H[3][3] + H[4][4] + H[5][5]);
  Mat6d Hd{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) Hd[i][j] = H[i][j].value();
  CHECK(std::fabs(Qq.value() - 0.25 * local_poly(Hd)) <= 1e-12 * std::max(1.0, std::fabs(Qq.value())));
}

TEST_CASE("expansion oracle report") {
  const ExpansionReport rep = expansion_oracle(120, 7);
  CHECK(rep.ok);
  CHECK(rep.decomposition_ok);
  CHECK(rep.max_taylor_defect == 0.0);  // exact rationals
  CHECK(rep.L_is_trace_multiple);
  CHECK(rep.L_trace_coeff == 1.0);
  CHECK(rep.kappa == 0.25);
  CHECK(rep.kappa_exact == "1/4");
  CHECK(rep.kappa_fit_residual == 0.0);
  CHECK_FALSE(rep.candidate_1_16_confirmed);
  CHECK(rep.candidate_1_16_residual > 1.0);  // decisively refuted
  CHECK(rep.ratio_at_2Id == 49.0);
  CHECK(rep.L_at_2Id == 12.0);
  CHECK(rep.Q_at_2Id == 36.0);
  CHECK(rep.local_at_2Id == 144.0);
  CHECK(rep.L_at_Id == 6.0);
  CHECK(rep.Q_at_Id == 9.0);
  CHECK(rep.cross_check_defect <= 1e-10);
}

TEST_CASE("diagnose at the flat point reports exact zeros") {
  const Grid g({8, 8, 1, 1, 1, 1});
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  const RHSData rhs = zero_rhs(g, fr);
  const Diagnostics d = diagnose(FormField::zeros(g, 0), rhs, fr, Om, true);
  CHECK(d.residual_norm == 0.0);
  CHECK(d.rho_stable_everywhere);
  CHECK(d.sigma_stable_everywhere);
  CHECK(d.positivity_worst.verdict == Verdict::negative);
  CHECK(d.positivity_worst.min_eig == -1.0);
  CHECK(d.negativity_worst.verdict == Verdict::negative);
  CHECK(d.duality_available);
  CHECK(d.duality_worst == 0.0);
  CHECK(d.volume_conservation_defect == 0.0);
  CHECK(d.ricci_available);
  CHECK(d.ricci_trusted);
  CHECK(d.ricci_norm == 0.0);
  CHECK(d.ricci_antisym_worst == 0.0);
}
