#include "sympcy/equation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sympcy/exterior.hpp"
#include "sympcy/rational.hpp"

namespace sympcy {

RHSData normalize_F(const FormField& F_raw, const SymplecticFrame&) {
  if (F_raw.degree != 0) throw std::invalid_argument("normalize_F: F must be a degree-0 field");
  const double big = F_raw.maxnorm();
  if (!(big <= 700.0))
    throw std::invalid_argument("normalize_F: e^F overflows, max |F| = " + std::to_string(big));
  const long long np = F_raw.npts();
  const double* v = F_raw.comp(0);
  double acc = 0.0;  // serial reduction: bit-reproducible
  for (long long p = 0; p < np; ++p) acc += std::exp(v[p]);
  const double shift = std::log(acc / static_cast<double>(np));
  RHSData rhs{F_raw, true, shift};
  double* w = rhs.F.comp(0);
  for (long long p = 0; p < np; ++p) w[p] = v[p] - shift;
  if (rhs.F.ana) rhs.F.ana->comp[0] = rhs.F.ana->comp[0] + Poly::constant(-shift);
  return rhs;
}

FormField exp_field(const FormField& F) {
  if (F.degree != 0) throw std::invalid_argument("exp_field: need a degree-0 field");
  if (F.maxnorm() == 0.0) {
    FormField one(F.grid, 0);
    double* w = one.comp(0);
    const long long np = F.npts();
    for (long long p = 0; p < np; ++p) w[p] = 1.0;
    AField a(0);
    a.comp[0] = Poly::constant(1.0);
    one.ana = a;
    return one;
  }
  FormField out(F.grid, 0);
  const long long np = F.npts();
  const double* v = F.comp(0);
  double* w = out.comp(0);
  for (long long p = 0; p < np; ++p) w[p] = std::exp(v[p]);
  return out;  // e^F leaves the closed analytic term algebra: values only
}

namespace {

FormField assemble_residual(const FormField& rt, const FormField& st, const RHSData& rhs,
                            const SymplecticFrame& fr,
                            const std::pair<FormField, FormField>& Omega) {
  if (!rhs.normalized) throw std::invalid_argument("residual: rhs not normalized");
  FormField pr = pairing_ratio_field(wedge_dealiased(rt, st), fr);
  FormField base = pairing_ratio_field(wedge_dealiased(Omega.first, Omega.second), fr);
  pr -= mul_scalar(exp_field(rhs.F), base);
  return pr;
}

}  // namespace

FormField residual(const FormField& phi, const RHSData& rhs, const SymplecticFrame& fr,
                   const std::pair<FormField, FormField>& Omega) {
  auto def = deform(phi, Omega, fr, +1);
  return assemble_residual(def.first, def.second, rhs, fr, Omega);
}

FormField residual_nonscalar(const FormField& alpha, const FormField& beta, const RHSData& rhs,
                             const SymplecticFrame& fr,
                             const std::pair<FormField, FormField>& Omega) {
  if (alpha.degree != 3 || beta.degree != 3)
    throw std::invalid_argument("residual_nonscalar: potentials must be 3-form fields");
  FormField rt = Omega.first + ext_d(d_s(fr, alpha));
  FormField st = Omega.second + ext_d(d_s(fr, beta));
  return assemble_residual(rt, st, rhs, fr, Omega);
}

double local_poly(const Mat6d& H) {
  auto f = [&](int i, int j) { return H[i - 1][j - 1]; };
  auto sq = [](double x) { return x * x; };
  double s = 0.0;
  s += (f(2, 2) + f(3, 3) + f(5, 5)) * (f(1, 1) + f(4, 4) + f(6, 6));
  s += (f(1, 1) + f(4, 4) + f(5, 5)) * (f(2, 2) + f(3, 3) + f(6, 6));
  s += (f(1, 1) + f(3, 3) + f(6, 6)) * (f(2, 2) + f(4, 4) + f(5, 5));
  s += (f(2, 2) + f(4, 4) + f(6, 6)) * (f(1, 1) + f(3, 3) + f(5, 5));
  s -= sq(f(1, 2) + f(3, 4) + f(5, 6));
  s -= sq(-f(1, 2) - f(3, 4) + f(5, 6));
  s -= sq(f(1, 2) - f(3, 4) - f(5, 6));
  s -= sq(-f(1, 2) + f(3, 4) - f(5, 6));
  s -= 2.0 * (sq(f(1, 3) - f(2, 4)) + sq(f(3, 6) + f(4, 5)) + sq(f(1, 5) - f(2, 6)) +
              sq(f(1, 6) + f(2, 5)) + sq(f(3, 5) - f(4, 6)) + sq(f(1, 4) + f(2, 3)));
  return s;
}

namespace {

using RatMat = std::array<std::array<Rat, 6>, 6>;

Rat local_poly_rat(const RatMat& H) {
  auto f = [&](int i, int j) { return H[i - 1][j - 1]; };
  auto sq = [](const Rat& x) { return x * x; };
  Rat s;
  s = s + (f(2, 2) + f(3, 3) + f(5, 5)) * (f(1, 1) + f(4, 4) + f(6, 6));
  s = s + (f(1, 1) + f(4, 4) + f(5, 5)) * (f(2, 2) + f(3, 3) + f(6, 6));
  s = s + (f(1, 1) + f(3, 3) + f(6, 6)) * (f(2, 2) + f(4, 4) + f(5, 5));
  s = s + (f(2, 2) + f(4, 4) + f(6, 6)) * (f(1, 1) + f(3, 3) + f(5, 5));
  s = s - sq(f(1, 2) + f(3, 4) + f(5, 6));
  s = s - sq(-f(1, 2) - f(3, 4) + f(5, 6));
  s = s - sq(f(1, 2) - f(3, 4) - f(5, 6));
  s = s - sq(-f(1, 2) + f(3, 4) - f(5, 6));
  Rat b = sq(f(1, 3) - f(2, 4)) + sq(f(3, 6) + f(4, 5)) + sq(f(1, 5) - f(2, 6)) +
          sq(f(1, 6) + f(2, 5)) + sq(f(3, 5) - f(4, 6)) + sq(f(1, 4) + f(2, 3));
  s = s - Rat(2) * b;
  return s;
}

// Exact intrinsic ratio r(t) = pairing(rho~ ^ sigma~)/c for phi = t * phi_H.
Rat intrinsic_ratio(const RatMat& H, const Rat& t, const Rat& c_rs) {
  RatPoly phi = r_quadratic(H).scaled(t);
  RatForm rho = r_rho0(), sigma = r_sigma0();
  RatForm rt = r_add(rho, r_d(r_ds(r_mul_scalar(phi, sigma))));
  RatForm st = r_add(sigma, r_scale(r_d(r_ds(r_mul_scalar(phi, rho))), Rat(-1)));
  RatForm top = r_wedge(rt, st);
  for (const auto& term : top.comp[0].t)
    if (term.first != std::array<int, 6>{})
      throw std::logic_error("expansion_oracle: top form not constant for quadratic phi");
  return top.comp[0].constant_term() / c_rs;
}

struct ExactDecomp {
  Rat L, Q, taylor_defect;
};

ExactDecomp decompose(const RatMat& H, const Rat& c_rs) {
  ExactDecomp d;
  Rat r0 = intrinsic_ratio(H, Rat(0), c_rs);
  if (!(r0 == Rat(1))) throw std::logic_error("expansion_oracle: r(0) != 1");
  Rat r1 = intrinsic_ratio(H, Rat(1), c_rs);
  Rat r2 = intrinsic_ratio(H, Rat(2), c_rs);
  d.L = (Rat(4) * r1 - r2 - Rat(3)) / Rat(2);
  d.Q = (r2 - Rat(2) * r1 + Rat(1)) / Rat(2);
  Rat rh = intrinsic_ratio(H, Rat(1, 2), c_rs);
  d.taylor_defect = rh - (Rat(1) + d.L / Rat(2) + d.Q / Rat(4));
  return d;
}

// The same ratio through the production field machinery (analytic backend).
double field_ratio(const Mat6d& Hd) {
  const Grid g({2, 2, 2, 2, 2, 2});
  const SymplecticFrame fr = make_frame(omega_std());
  FormField phi = FormField::scalar_analytic(g, Poly::quadratic(Hd));
  auto Om = standard_omega_pair(g);
  auto def = deform(phi, Om, fr, +1);
  FormField pr = pairing_ratio_field(wedge_dealiased(def.first, def.second), fr);
  const double c = pairing_ratio(wedge(rho0(), sigma0()), fr);
  double worst = 0.0;
  const double r = pr.comp(0)[0] / c;
  for (long long p = 0; p < pr.npts(); ++p)
    worst = std::max(worst, std::abs(pr.comp(0)[p] / c - r));
  if (worst > 1e-12) throw std::logic_error("expansion_oracle: field ratio not constant");
  return r;
}

}  // namespace

ExpansionReport expansion_oracle(int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("expansion_oracle: samples must be >= 1");
  ExpansionReport rep;
  rep.samples = samples;
  rep.seed = seed;

  const Rat c_rs = r_wedge(r_rho0(), r_sigma0()).comp[0].constant_term() / r_vol().comp[0].constant_term();

  std::mt19937_64 eng(seed);
  auto draw = [&]() { return Rat(static_cast<long long>(eng() % 33) - 16, 8); };

  bool taylor_exact = true;
  bool trace_ok = true;
  Rat trace_coeff;
  bool trace_coeff_set = false;
  Rat kappa;
  bool kappa_set = false;
  bool kappa_consistent = true;
  double l_fit = 0.0, k_fit = 0.0, cand_res = 0.0, taylor_worst = 0.0;
  bool cand_exact = true;

  for (int s = 0; s < samples; ++s) {
    RatMat H{};
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) {
        Rat v = draw();
        H[i][j] = v;
        H[j][i] = v;
      }
    ExactDecomp d = decompose(H, c_rs);
    if (!d.taylor_defect.is_zero()) taylor_exact = false;
    taylor_worst = std::max(taylor_worst, std::abs(d.taylor_defect.to_double()));

    Rat tr;
    for (int i = 0; i < 6; ++i) tr = tr + H[i][i];
    if (!tr.is_zero()) {
      Rat coeff = d.L / tr;
      if (!trace_coeff_set) {
        trace_coeff = coeff;
        trace_coeff_set = true;
      }
      Rat lres = d.L - trace_coeff * tr;
      if (!lres.is_zero()) trace_ok = false;
      l_fit = std::max(l_fit, std::abs(lres.to_double()));
    } else if (!d.L.is_zero()) {
      trace_ok = false;
      l_fit = std::max(l_fit, std::abs(d.L.to_double()));
    }

    Rat lp = local_poly_rat(H);
    if (!lp.is_zero()) {
      Rat k = d.Q / lp;
      if (!kappa_set) {
        kappa = k;
        kappa_set = true;
      }
      Rat kres = d.Q - kappa * lp;
      if (!kres.is_zero()) kappa_consistent = false;
      k_fit = std::max(k_fit, std::abs(kres.to_double()));
    } else if (!d.Q.is_zero()) {
      kappa_consistent = false;
      k_fit = std::max(k_fit, std::abs(d.Q.to_double()));
    }
    Rat cres = d.Q - lp / Rat(16);
    if (!cres.is_zero()) cand_exact = false;
    cand_res = std::max(cand_res, std::abs(cres.to_double()));
  }

  // Pinned calibration points.
  RatMat twoId{}, oneId{};
  for (int i = 0; i < 6; ++i) {
    twoId[i][i] = Rat(2);
    oneId[i][i] = Rat(1);
  }
  ExactDecomp d2 = decompose(twoId, c_rs);
  ExactDecomp d1 = decompose(oneId, c_rs);
  rep.ratio_at_2Id = intrinsic_ratio(twoId, Rat(1), c_rs).to_double();
  rep.L_at_2Id = d2.L.to_double();
  rep.Q_at_2Id = d2.Q.to_double();
  rep.local_at_2Id = local_poly_rat(twoId).to_double();
  rep.L_at_Id = d1.L.to_double();
  rep.Q_at_Id = d1.Q.to_double();

  // Cross-check the exact path against the field machinery on fixed Hessians.
  {
    Mat6d H2{};
    for (int i = 0; i < 6; ++i) H2[i][i] = 2.0;
    Mat6d Hm{};
    Hm[0][0] = 1.5;
    Hm[0][2] = -0.75;
    Hm[2][0] = -0.75;
    Hm[1][3] = 0.5;
    Hm[3][1] = 0.5;
    Hm[4][4] = -1.0;
    RatMat HmR{};
    HmR[0][0] = Rat(3, 2);
    HmR[0][2] = HmR[2][0] = Rat(-3, 4);
    HmR[1][3] = HmR[3][1] = Rat(1, 2);
    HmR[4][4] = Rat(-1);
    rep.cross_check_defect =
        std::max(std::abs(field_ratio(H2) - rep.ratio_at_2Id),
                 std::abs(field_ratio(Hm) - intrinsic_ratio(HmR, Rat(1), c_rs).to_double()));
  }

  rep.decomposition_ok = taylor_exact;
  rep.max_taylor_defect = taylor_worst;
  rep.L_is_trace_multiple = trace_ok && trace_coeff_set;
  rep.L_trace_coeff = trace_coeff_set ? trace_coeff.to_double() : 0.0;
  rep.L_fit_residual = l_fit;
  if (kappa_set) {
    rep.kappa = kappa.to_double();
    rep.kappa_exact = kappa.str();
  }
  rep.kappa_fit_residual = kappa_consistent ? k_fit : std::max(k_fit, 1.0);
  rep.candidate_1_16_confirmed = cand_exact;
  rep.candidate_1_16_residual = cand_res;
  rep.ok = rep.decomposition_ok && rep.L_is_trace_multiple && kappa_set && kappa_consistent &&
           rep.kappa_fit_residual <= 1e-8 && rep.L_fit_residual <= 1e-8 &&
           rep.cross_check_defect <= 1e-10;
  return rep;
}

nlohmann::ordered_json expansion_json(const ExpansionReport& rep) {
  nlohmann::ordered_json j;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["decomposition_ok"] = rep.decomposition_ok;
  j["max_taylor_defect"] = rep.max_taylor_defect;
  j["L_is_trace_multiple"] = rep.L_is_trace_multiple;
  j["L_trace_coeff"] = rep.L_trace_coeff;
  j["L_fit_residual"] = rep.L_fit_residual;
  j["kappa"] = rep.kappa;
  j["kappa_exact"] = rep.kappa_exact;
  j["kappa_fit_residual"] = rep.kappa_fit_residual;
  j["candidate_1_16_confirmed"] = rep.candidate_1_16_confirmed;
  j["candidate_1_16_residual"] = rep.candidate_1_16_residual;
  j["ratio_at_2Id"] = rep.ratio_at_2Id;
  j["L_at_2Id"] = rep.L_at_2Id;
  j["Q_at_2Id"] = rep.Q_at_2Id;
  j["local_at_2Id"] = rep.local_at_2Id;
  j["L_at_Id"] = rep.L_at_Id;
  j["Q_at_Id"] = rep.Q_at_Id;
  j["cross_check_defect"] = rep.cross_check_defect;
  j["ok"] = rep.ok;
  return j;
}

}  // namespace sympcy
