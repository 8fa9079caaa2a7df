#pragma once
// The numerical conventions the library commits to, computed from the algebra
// itself at startup (not transcribed constants) and embedded in every report.
#include <nlohmann/json.hpp>
#include <string>

namespace sympcy {

struct Conventions {
  double c_rho_sigma;     // pairing ratio (rho0 ^ sigma0) / vol
  double c_omega;         // dd^c(phi_model) = c_omega * omega
  double kappa;           // quadratic weight in the expansion R = 1 + L + kappa * P
  std::string kappa_exact;
  int j_sign;             // J = j_sign * K / sqrt(-lambda)
  std::string j_rho0;     // what J(rho0) is in the standard basis
  double lambda_rho0;     // Hitchin invariant of rho0
  double dds_phi_sigma_coeff;  // dd^s(phi_model * sigma0) = coeff * rho0
  double dds_phi_rho_coeff;    // dd^s(phi_model * rho0)   = coeff * sigma0
  std::string model_potential;
  std::string star_convention;
  std::string ds_convention;
};

// Computes the block, cross-checking each constant against the field
// machinery; throws std::logic_error if the build is internally inconsistent.
const Conventions& conventions();

nlohmann::ordered_json conventions_json();

}  // namespace sympcy
