#include "sympcy/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "sympcy/calculus.hpp"
#include "sympcy/conventions.hpp"
#include "sympcy/diagnose.hpp"
#include "sympcy/equation.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/hxf.hpp"
#include "sympcy/solver.hpp"
#include "sympcy/spectral.hpp"
#include "sympcy/stable3.hpp"
#include "sympcy/util.hpp"

namespace sympcy {

namespace {

KForm rand_form(std::mt19937_64& eng, int deg) {
  KForm f(deg);
  for (int c = 0; c < kDim[deg]; ++c) f.c[c] = uniform_pm1(eng);
  return f;
}

FormField rand_band_field(std::mt19937_64& eng, const Grid& g, int deg, int kmax) {
  FormField f(g, deg);
  for (int c = 0; c < f.ncomp(); ++c) {
    double* v = f.comp(c);
    for (long long p = 0; p < f.npts(); ++p) v[p] = uniform_pm1(eng);
    lowpass(g, v, kmax);
  }
  return f;
}

void push(std::vector<CheckResult>& out, const std::string& name, double defect, double tol,
          const std::string& note = "") {
  out.push_back({name, defect <= tol, defect, tol, note});
}

void push_flag(std::vector<CheckResult>& out, const std::string& name, bool pass,
               const std::string& note = "") {
  out.push_back({name, pass, pass ? 0.0 : 1.0, 0.0, note});
}

const Grid& test_grid() {
  static const Grid g({8, 8, 8, 8, 1, 1});
  return g;
}

}  // namespace

std::vector<CheckResult> verify_exterior(std::uint64_t seed, int cases, bool inject) {
  std::vector<CheckResult> out;
  std::mt19937_64 eng(seed);
  const SymplecticFrame fr = make_frame(omega_std(), inject);

  double d_anti = 0, d_assoc = 0, d_ider = 0, d_isq = 0, d_inv = 0, d_pair = 0;
  for (int t = 0; t < cases; ++t) {
    const int k = static_cast<int>(eng() % 4);
    const int l = static_cast<int>(eng() % (7 - k > 3 ? 4 : 7 - k));
    KForm a = rand_form(eng, k), b = rand_form(eng, l);
    KForm ab = wedge(a, b), ba = wedge(b, a);
    const double sgn = (k * l) % 2 == 0 ? 1.0 : -1.0;
    d_anti = std::max(d_anti, (ab - ba * sgn).maxnorm());
    if (k + l <= 5) {
      const int m = static_cast<int>(eng() % (6 - k - l + 1));
      KForm c = rand_form(eng, m);
      d_assoc = std::max(d_assoc, (wedge(ab, c) - wedge(a, wedge(b, c))).maxnorm());
    }
    if (k >= 1) {
      Vec6 v;
      for (auto& x : v) x = uniform_pm1(eng);
      KForm lhs = interior(v, wedge(a, b));
      KForm rhs = wedge(interior(v, a), b);
      if (l >= 1) {
        KForm second = wedge(a, interior(v, b));
        if (k % 2 == 1) second *= -1.0;
        rhs += second;
      }
      d_ider = std::max(d_ider, (lhs - rhs).maxnorm());
      if (k >= 2) d_isq = std::max(d_isq, interior(v, interior(v, a)).maxnorm());
    }
    const int dk = static_cast<int>(eng() % 7);
    KForm f = rand_form(eng, dk);
    d_inv = std::max(d_inv, (star_s(fr, star_s(fr, f)) - f).maxnorm());
    KForm g2 = rand_form(eng, dk);
    KForm lhs6 = wedge(g2, star_s(fr, f));
    double gk = 0;
    for (int i = 0; i < kDim[dk]; ++i)
      for (int j = 0; j < kDim[dk]; ++j) gk += g2.c[i] * f.c[j] * gk_pairing(fr, dk, i, j);
    KForm rhs6 = fr.vol * gk;
    d_pair = std::max(d_pair, (lhs6 - rhs6).maxnorm());
  }
  push(out, "exterior/wedge_anticommute", d_anti, 1e-12);
  push(out, "exterior/wedge_associative", d_assoc, 1e-12);
  push(out, "exterior/interior_antiderivation", d_ider, 1e-12);
  push(out, "exterior/interior_squared_zero", d_isq, 1e-12);
  push(out, "exterior/star_involution", d_inv, 1e-12);
  push(out, "exterior/star_pairing_relation", d_pair, 1e-12);

  push(out, "exterior/omega_cubed_6vol", (wedge(wedge(omega_std(), omega_std()), omega_std()) - vol_std() * 6.0).maxnorm(), 0.0);
  push(out, "exterior/star_one_is_vol", (star_s(fr, KForm::basis({}, 1.0)) - vol_std()).maxnorm(),
       0.0);
  push(out, "exterior/star_omega_half_omega_sq",
       (star_s(fr, omega_std()) - wedge(omega_std(), omega_std()) * 0.5).maxnorm(), 0.0);
  push(out, "exterior/star_vol_is_one", (star_s(fr, vol_std()) - KForm::basis({}, 1.0)).maxnorm(),
       0.0);
  return out;
}

std::vector<CheckResult> verify_stable3(std::uint64_t seed, int cases) {
  std::vector<CheckResult> out;
  std::mt19937_64 eng(seed);
  const SymplecticFrame fr = make_frame(omega_std());

  StableAnalysis a0 = analyze(rho0(), fr);
  push(out, "stable3/lambda_rho0_is_minus4", std::abs(a0.lambda + 4.0), 0.0);
  {
    Mat6 Jstd = Mat6::Zero();
    for (int b = 0; b < 3; ++b) {
      Jstd(2 * b + 1, 2 * b) = 1.0;   // J e_{2b+1} = +e_{2b+2}
      Jstd(2 * b, 2 * b + 1) = -1.0;  // J e_{2b+2} = -e_{2b+1}
    }
    push(out, "stable3/K_rho0_is_minus2Jstd", (a0.K - (-2.0) * Jstd).cwiseAbs().maxCoeff(), 0.0);
    push_flag(out, "stable3/J_rho0_is_minusJstd",
              a0.J && ((*a0.J) - (-1.0) * Jstd).cwiseAbs().maxCoeff() == 0.0,
              "pinned global sign: J(rho0) = -J_std");
  }
  push(out, "stable3/lambda_e123_zero", std::abs(analyze(KForm::basis({1, 2, 3}), fr).lambda), 0.0);
  push(out, "stable3/lambda_e123_plus_e456_one",
       std::abs(analyze(KForm::basis({1, 2, 3}) + KForm::basis({4, 5, 6}), fr).lambda - 1.0), 0.0);
  push_flag(out, "stable3/e123_not_stable", !analyze(KForm::basis({1, 2, 3}), fr).stable);
  push(out, "stable3/dual_rho0_is_sigma0", a0.dual ? (*a0.dual - sigma0()).maxnorm() : 1.0, 0.0);
  push(out, "stable3/duality_defect_rho0_sigma0", duality_defect(rho0(), sigma0(), fr), 0.0);
  push(out, "stable3/duality_defect_double_dual",
       std::abs(duality_defect(rho0(), *a0.dual * 2.0, fr) - 1.0), 0.0,
       "defect of (rho0, 2 J_rho rho0) is exactly 1 under the ||J_rho rho|| normalizer");

  double d_jsq = 0, d_ksq = 0, d_hom = 0, d_jscale = 0;
  int complex_seen = 0;
  for (int t = 0; t < cases; ++t) {
    KForm r = rand_form(eng, 3);
    StableAnalysis an = analyze(r, fr);
    const double scale = std::pow(r.maxnorm(), 4);
    StableAnalysis an2 = analyze(r * 2.0, fr);
    d_hom = std::max(d_hom, std::abs(an2.lambda - 16.0 * an.lambda) / (16.0 * scale));
    if (an.complex_type) {
      ++complex_seen;
      d_jsq = std::max(d_jsq, ((*an.J) * (*an.J) + Mat6::Identity()).cwiseAbs().maxCoeff());
      d_ksq = std::max(d_ksq,
                       (an.K * an.K - an.lambda * Mat6::Identity()).cwiseAbs().maxCoeff() /
                           std::abs(an.lambda));
      if (an2.complex_type)
        d_jscale = std::max(d_jscale, ((*an.J) - (*an2.J)).cwiseAbs().maxCoeff());
    }
  }
  push(out, "stable3/J_squared_minus_identity", d_jsq, 1e-8);
  push(out, "stable3/K_squared_lambda_identity", d_ksq, 1e-8);
  push(out, "stable3/lambda_homogeneity_t4", d_hom, 1e-12);
  push(out, "stable3/J_scale_invariance", d_jscale, 1e-10);
  push_flag(out, "stable3/complex_samples_seen", complex_seen > 0,
            "negative-lambda samples among random draws: " + std::to_string(complex_seen));

  Positivity pr = classify(rho0(), fr), ps = classify(sigma0(), fr);
  push_flag(out, "stable3/classify_rho0_sigma0_same_verdict", pr.verdict == ps.verdict,
            std::string("both ") + verdict_name(pr.verdict) +
                " under the pinned J sign (taming form omega(.,J.) = -Id at rho0)");
  push(out, "stable3/classify_rho0_min_eig_minus1", std::abs(pr.min_eig + 1.0), 1e-12);
  push(out, "stable3/classify_rho0_primitive", pr.primitive_defect, 0.0);
  return out;
}

std::vector<CheckResult> verify_fields(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 eng(seed);
  const Grid& g = test_grid();
  const SymplecticFrame fr = make_frame(omega_std());

  double d_dsq = 0, d_dssq = 0, d_anti = 0, d_star = 0, d_dexact = 0;
  for (int deg = 0; deg <= 3; ++deg) {
    FormField f = rand_band_field(eng, g, deg, 2);
    const double sc = std::max(1.0, f.maxnorm());
    if (deg <= 4) d_dsq = std::max(d_dsq, ext_d(ext_d(f)).maxnorm() / sc);
    if (deg >= 2) d_dssq = std::max(d_dssq, d_s(fr, d_s(fr, f)).maxnorm() / sc);
    if (deg >= 1 && deg <= 5) {
      FormField lhs = ext_d(d_s(fr, f));
      lhs += d_s(fr, ext_d(f));
      d_anti = std::max(d_anti, lhs.maxnorm() / sc);
    }
    FormField ss = star_f(fr, star_f(fr, f));
    ss -= f;
    d_star = std::max(d_star, ss.maxnorm() / sc);
  }
  push(out, "fields/d_squared_zero", d_dsq, 1e-12);
  push(out, "fields/ds_squared_zero", d_dssq, 1e-12);
  push(out, "fields/d_ds_anticommute", d_anti, 1e-10);
  push(out, "fields/star_field_involution", d_star, 1e-12);

  {
    FormField phi = rand_band_field(eng, g, 0, 2);
    auto def = deform(phi, standard_omega_pair(g), fr, +1);
    d_dexact = std::max(ext_d(def.first).maxnorm(), ext_d(def.second).maxnorm());
    push(out, "fields/deformed_pair_closed", d_dexact, 1e-10,
         "d rho~ and d sigma~ vanish for band-limited phi");
  }

  {
    // Analytic backend is the oracle for the spectral backend.
    FormField phi_a = FormField::scalar_analytic(g, Poly::cosine(1.0, {1, 0, 0, 0, 0, 0}, -1.5707963267948966));
    FormField prod_a = mul_scalar(phi_a, FormField::constant(g, sigma0()));
    FormField ds_a = d_s(fr, prod_a);
    FormField phi_s = phi_a;
    phi_s.ana.reset();
    FormField prod_s = mul_scalar(phi_s, FormField::constant(g, sigma0()));
    prod_s.ana.reset();
    FormField ds_s = d_s(fr, prod_s);
    ds_s -= ds_a;
    push(out, "fields/ds_spectral_matches_analytic", ds_s.maxnorm(), 1e-12,
         "d_s(sin(x1) sigma0), spectral vs exact");
  }

  {
    FormField f = rand_band_field(eng, g, 2, 3);
    const auto path = std::filesystem::temp_directory_path() /
                      ("hxf_verify_" + std::to_string(seed) + ".hxf");
    write_hxf(path.string(), f);
    FormField r = read_hxf(path.string());
    std::filesystem::remove(path);
    double d = 0;
    bool same_meta = r.degree == f.degree && r.grid == f.grid;
    for (size_t i = 0; same_meta && i < f.v.size(); ++i)
      d = std::max(d, std::abs(r.v[i] - f.v[i]));
    push(out, "fields/hxf_roundtrip_bitwise", same_meta ? d : 1.0, 0.0);
  }
  return out;
}

std::vector<CheckResult> verify_equation(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 eng(seed);
  const Grid& g = test_grid();
  const SymplecticFrame fr = make_frame(omega_std());
  const auto Om = standard_omega_pair(g);
  RHSData zeroF = normalize_F(FormField::zeros(g, 0), fr);

  push(out, "equation/residual_zero_baseline",
       residual(FormField::zeros(g, 0), zeroF, fr, Om).maxnorm(), 0.0,
       "residual(0, F=0) vanishes bitwise");

  FormField phi = rand_band_field(eng, g, 0, 2);
  phi *= 0.05;
  {
    FormField shifted = phi;
    double* v = shifted.comp(0);
    for (long long p = 0; p < shifted.npts(); ++p) v[p] += 0.37;
    FormField diff = residual(shifted, zeroF, fr, Om);
    diff -= residual(phi, zeroF, fr, Om);
    push(out, "equation/gauge_invariance", diff.maxnorm(), 1e-12);
  }

  {
    // residual(t phi) is exactly quadratic in t per grid point.
    FormField r0 = residual(FormField::zeros(g, 0), zeroF, fr, Om);
    FormField r1 = residual(phi, zeroF, fr, Om);
    FormField ph2 = phi;
    ph2 *= 2.0;
    FormField r2 = residual(ph2, zeroF, fr, Om);
    FormField phh = phi;
    phh *= 0.5;
    FormField rh = residual(phh, zeroF, fr, Om);
    double worst = 0;
    for (long long p = 0; p < g.npts(); ++p) {
      const double a0 = r0.comp(0)[p];
      const double L = (4.0 * r1.comp(0)[p] - r2.comp(0)[p] - 3.0 * a0) / 2.0;
      const double Q = (r2.comp(0)[p] - 2.0 * r1.comp(0)[p] + a0) / 2.0;
      worst = std::max(worst, std::abs(rh.comp(0)[p] - (a0 + 0.5 * L + 0.25 * Q)));
    }
    push(out, "equation/residual_quadratic_in_t", worst, 1e-11);
  }

  {
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
      FormField f = rand_band_field(eng, g, 0, 2);
      f *= 0.05;
      auto def = deform(f, Om, fr, +1);
      FormField num = pairing_ratio_field(wedge_dealiased(def.first, def.second), fr);
      FormField den = pairing_ratio_field(wedge_dealiased(Om.first, Om.second), fr);
      worst = std::max(worst, std::abs(num.mean(0) - den.mean(0)) / std::abs(den.mean(0)));
    }
    push(out, "equation/volume_conservation", worst, 1e-10);
  }

  {
    FormField alpha = mul_scalar(phi, Om.second);
    FormField beta = mul_scalar(phi, Om.first);
    beta *= -1.0;
    FormField diff = residual_nonscalar(alpha, beta, zeroF, fr, Om);
    diff -= residual(phi, zeroF, fr, Om);
    push(out, "equation/nonscalar_contains_scalar", diff.maxnorm(), 1e-12);
  }

  {
    FormField psi = rand_band_field(eng, g, 0, 2);
    psi *= 0.05;
    FormField lhs = residual(phi + psi, zeroF, fr, Om);
    lhs -= residual(phi, zeroF, fr, Om);
    lhs -= jvp(phi, psi, zeroF, fr, Om);
    FormField quad = residual(psi, zeroF, fr, Om);
    quad -= residual(FormField::zeros(g, 0), zeroF, fr, Om);
    quad -= jvp(FormField::zeros(g, 0), psi, zeroF, fr, Om);
    lhs -= quad;
    push(out, "equation/jvp_exact_quadratic_taylor", lhs.maxnorm(), 1e-11);

    const double h = 1e-5;
    FormField hp = psi;
    hp *= h;
    FormField fplus = residual(phi + hp, zeroF, fr, Om);
    FormField fminus = residual(phi - hp, zeroF, fr, Om);
    FormField fd = fplus - fminus;
    fd *= 1.0 / (2.0 * h);
    FormField an = jvp(phi, psi, zeroF, fr, Om);
    fd -= an;
    push(out, "equation/jvp_central_difference", fd.maxnorm() / std::max(1e-30, an.maxnorm()),
         1e-6);
  }

  {
    Grid g1({64, 1, 1, 1, 1, 1});
    FormField F(g1, 0);
    for (long long p = 0; p < g1.npts(); ++p)
      F.comp(0)[p] = 0.1 * std::sin(2.0 * M_PI * static_cast<double>(p) / 64.0);
    RHSData rhs = normalize_F(F, fr);
    const double bessel = std::cyl_bessel_i(0.0, 0.1);
    push(out, "equation/normalize_shift_bessel",
         std::abs(rhs.normalization_shift - std::log(bessel)), 1e-10,
         "shift = log(mean e^{0.1 sin x1}) = log I0(0.1)");
  }

  {
    // Manufactured consistency: forward-computed F gives residual 0.
    auto def = deform(phi, Om, fr, +1);
    FormField num = pairing_ratio_field(wedge_dealiased(def.first, def.second), fr);
    FormField den = pairing_ratio_field(wedge_dealiased(Om.first, Om.second), fr);
    FormField Fm(g, 0);
    bool positive = true;
    for (long long p = 0; p < g.npts(); ++p) {
      const double q = num.comp(0)[p] / den.comp(0)[p];
      if (q <= 0) positive = false;
      Fm.comp(0)[p] = std::log(std::max(q, 1e-300));
    }
    RHSData rhs = normalize_F(Fm, fr);
    const double d = positive ? residual(phi, rhs, fr, Om).maxnorm() : 1.0;
    push(out, "equation/manufactured_residual_zero", d, 1e-12);
  }

  {
    Diagnostics d0 = diagnose(FormField::zeros(g, 0), zeroF, fr, Om, true);
    bool zeros = d0.residual_norm == 0.0 && d0.duality_available && d0.duality_worst == 0.0 &&
                 d0.volume_conservation_defect == 0.0 && d0.ricci_available &&
                 d0.ricci_norm == 0.0;
    push_flag(out, "equation/diagnose_baseline_exact_zeros", zeros,
              "residual, duality, volume defect and ricci all exactly zero at phi=0");
  }
  return out;
}

std::vector<CheckResult> verify_example_c3() {
  std::vector<CheckResult> out;
  const Grid g({2, 2, 2, 2, 2, 2});
  const SymplecticFrame fr = make_frame(omega_std());
  const auto Om = standard_omega_pair(g);
  const Conventions& cv = conventions();

  // phi_full = sum |z|^2 (Hessian 2 Id) and phi_half = phi_full / 2.
  Mat6d H2{}, H1{};
  for (int a = 0; a < 6; ++a) {
    H2[a][a] = 2.0;
    H1[a][a] = 1.0;
  }
  FormField phi_full = FormField::scalar_analytic(g, Poly::quadratic(H2));
  FormField phi_half = FormField::scalar_analytic(g, Poly::quadratic(H1));

  FormField dds_fs = ext_d(d_s(fr, mul_scalar(phi_full, Om.second)));
  FormField dds_fr = ext_d(d_s(fr, mul_scalar(phi_full, Om.first)));
  push(out, "example_c3/dds_phi_sigma_6rho",
       (dds_fs - FormField::constant(g, rho0() * 6.0)).maxnorm(), 1e-12,
       "dd^s(phi sigma0) = 6 rho0 for phi = sum |z|^2");
  push(out, "example_c3/dds_phi_rho_minus6sigma",
       (dds_fr - FormField::constant(g, sigma0() * -6.0)).maxnorm(), 1e-12);

  FormField dds_hs = ext_d(d_s(fr, mul_scalar(phi_half, Om.second)));
  FormField dds_hr = ext_d(d_s(fr, mul_scalar(phi_half, Om.first)));
  push(out, "example_c3/dds_halfphi_sigma_3rho",
       (dds_hs - FormField::constant(g, rho0() * 3.0)).maxnorm(), 1e-12,
       "the 3 rho0 normalization holds for phi with unit Hessian");
  push(out, "example_c3/dds_halfphi_rho_minus3sigma",
       (dds_hr - FormField::constant(g, sigma0() * -3.0)).maxnorm(), 1e-12);

  {
    StableAnalysis an = analyze(rho0(), fr);
    FormField ddc = ext_d(d_c(phi_full, *an.J));
    double cw = ddc.comp(0)[0] / omega_std().c[0];
    double worst = (ddc - FormField::constant(g, omega_std() * cw)).maxnorm();
    push(out, "example_c3/ddc_phi_constant_multiple_omega", worst, 1e-12,
         "dd^c(phi) = c_omega * omega with c_omega = " + std::to_string(cw));
    push(out, "example_c3/c_omega_matches_ledger", std::abs(cw - cv.c_omega), 0.0);
  }

  {
    auto def = deform(phi_full, Om, fr, +1);
    push(out, "example_c3/deform_phi_full_7rho",
         (def.first - FormField::constant(g, rho0() * 7.0)).maxnorm(), 1e-12);
    push(out, "example_c3/deform_phi_full_7sigma",
         (def.second - FormField::constant(g, sigma0() * 7.0)).maxnorm(), 1e-12);
    RHSData zeroF = normalize_F(FormField::zeros(g, 0), fr);
    FormField res = residual(phi_full, zeroF, fr, Om);
    push(out, "example_c3/residual_phi_full_48c",
         (res - FormField::constant(g, KForm::basis({}, 48.0 * cv.c_rho_sigma))).maxnorm(), 1e-12,
         "pairing ratio 49 c at phi_full; 16 c (hence 15 c residual) holds at phi_half");
    FormField resh = residual(phi_half, zeroF, fr, Om);
    push(out, "example_c3/residual_phi_half_15c",
         (resh - FormField::constant(g, KForm::basis({}, 15.0 * cv.c_rho_sigma))).maxnorm(), 1e-12);
  }
  return out;
}

std::vector<CheckResult> verify_all(std::uint64_t seed, bool inject_star_sign_error) {
  std::vector<CheckResult> out = verify_exterior(seed, 400, inject_star_sign_error);
  auto app = [&](std::vector<CheckResult> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  app(verify_stable3(seed + 1, 300));
  app(verify_fields(seed + 2));
  app(verify_equation(seed + 3));
  app(verify_example_c3());
  return out;
}

nlohmann::ordered_json verify_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  int failed = 0;
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["defect"] = c.defect;
    j["tolerance"] = c.tolerance;
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
    if (!c.pass) ++failed;
  }
  nlohmann::ordered_json root;
  root["checks"] = arr;
  root["total"] = static_cast<int>(checks.size());
  root["failed"] = failed;
  root["all_pass"] = failed == 0;
  return root;
}

}  // namespace sympcy
