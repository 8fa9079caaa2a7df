#include "sympcy/conventions.hpp"

#include <cmath>
#include <stdexcept>

#include "sympcy/calculus.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/frame.hpp"
#include "sympcy/stable3.hpp"

namespace sympcy {

namespace {

// Extracts c from `field == c * ref` (both constant forms); logic_error if the
// field is not an exact multiple of ref.
double multiple_of(const FormField& f, const KForm& ref, const char* what) {
  int pivot = -1;
  for (int c = 0; c < kDim[ref.degree]; ++c)
    if (ref.c[c] != 0.0) {
      pivot = c;
      break;
    }
  if (pivot < 0 || f.degree != ref.degree) throw std::logic_error(std::string("conventions: bad reference for ") + what);
  const double coef = f.comp(pivot)[0] / ref.c[pivot];
  FormField resid = f;
  resid -= FormField::constant(f.grid, ref * coef);
  if (resid.maxnorm() > 1e-10 * (1.0 + std::abs(coef)))
    throw std::logic_error(std::string("conventions: ") + what + " is not proportional to its reference form");
  return coef;
}

Conventions compute() {
  Conventions cv;
  const SymplecticFrame fr = make_frame(omega_std());
  const Grid g({2, 2, 2, 2, 2, 2});

  cv.c_rho_sigma = pairing_ratio(wedge(rho0(), sigma0()), fr);

  StableAnalysis an = analyze(rho0(), fr);
  cv.lambda_rho0 = an.lambda;
  cv.j_sign = +1;
  cv.j_rho0 = "-J_std (J e1 = -e2, J e3 = -e4, J e5 = -e6)";

  // Model potential phi = sum_i |z^i|^2 = sum_a x_a^2 (Hessian 2*Id).
  std::array<std::array<double, 6>, 6> H{};
  for (int a = 0; a < 6; ++a) H[a][a] = 2.0;
  FormField phi = FormField::scalar_analytic(g, Poly::quadratic(H));
  cv.model_potential = "phi = sum_i |z^i|^2 = sum_a x_a^2";

  if (!an.J) throw std::logic_error("conventions: rho0 not complex-type");
  FormField ddc = ext_d(d_c(phi, *an.J));
  cv.c_omega = multiple_of(ddc, omega_std(), "dd^c(phi)");

  auto Om = standard_omega_pair(g);
  FormField dds_sigma = ext_d(d_s(fr, mul_scalar(phi, Om.second)));
  cv.dds_phi_sigma_coeff = multiple_of(dds_sigma, rho0(), "dd^s(phi sigma0)");
  FormField dds_rho = ext_d(d_s(fr, mul_scalar(phi, Om.first)));
  cv.dds_phi_rho_coeff = multiple_of(dds_rho, sigma0(), "dd^s(phi rho0)");

  cv.kappa = 0.25;
  cv.kappa_exact = "1/4";

  cv.star_convention = "b ^ *a = G_k(b,a) vol with G_k the Gram determinant of P = -omega^{-1}";
  cv.ds_convention = "d^s = (-1)^{k+1} * d * on k-forms; d^s f = 0 on functions";
  return cv;
}

}  // namespace

const Conventions& conventions() {
  static const Conventions cv = compute();
  return cv;
}

nlohmann::ordered_json conventions_json() {
  const Conventions& cv = conventions();
  nlohmann::ordered_json j;
  j["c_rho_sigma"] = cv.c_rho_sigma;
  j["c_omega"] = cv.c_omega;
  j["kappa"] = cv.kappa;
  j["kappa_exact"] = cv.kappa_exact;
  j["j_sign"] = cv.j_sign;
  j["j_rho0"] = cv.j_rho0;
  j["lambda_rho0"] = cv.lambda_rho0;
  j["dds_phi_sigma_coeff"] = cv.dds_phi_sigma_coeff;
  j["dds_phi_rho_coeff"] = cv.dds_phi_rho_coeff;
  j["model_potential"] = cv.model_potential;
  j["star_convention"] = cv.star_convention;
  j["ds_convention"] = cv.ds_convention;
  return j;
}

}  // namespace sympcy
