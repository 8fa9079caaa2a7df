#pragma once
// The deformed-volume equation: residual evaluators (scalar ansatz and the
// general two-potential form), normalization of the right-hand side F, the
// local quadratic polynomial, and the exact-rational expansion oracle that
// pins the relation between the intrinsic ratio and that polynomial.
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>

#include "sympcy/calculus.hpp"
#include "sympcy/field.hpp"
#include "sympcy/frame.hpp"

namespace sympcy {

struct RHSData {
  FormField F;
  bool normalized = false;
  double normalization_shift = 0.0;
};

// F <- F_raw - log(mean(e^{F_raw})), so the discrete mean of e^F is exactly 1.
// Throws std::invalid_argument when e^{F_raw} would overflow (|F| > 700).
RHSData normalize_F(const FormField& F_raw, const SymplecticFrame& fr);

// Pointwise e^F of a degree-0 field (exact constant-1 shortcut when F == 0).
FormField exp_field(const FormField& F);

// pairing_ratio(rho~ ^ sigma~) - e^F * pairing_ratio(rho ^ sigma), with
// (rho~, sigma~) = deform(phi, Omega, +1).  Requires rhs.normalized.
FormField residual(const FormField& phi, const RHSData& rhs, const SymplecticFrame& fr,
                   const std::pair<FormField, FormField>& Omega);

// pairing_ratio((rho + dd^s alpha) ^ (sigma + dd^s beta)) - e^F * c, for
// 3-form potentials alpha, beta.  The scalar ansatz is (alpha, beta) =
// (phi sigma, -phi rho).
FormField residual_nonscalar(const FormField& alpha, const FormField& beta, const RHSData& rhs,
                             const SymplecticFrame& fr,
                             const std::pair<FormField, FormField>& Omega);

using Mat6d = std::array<std::array<double, 6>, 6>;

// The local quadratic polynomial in the second derivatives phi_{ij},
// transcribed term for term.
double local_poly(const Mat6d& H);

struct ExpansionReport {
  int samples = 0;
  std::uint64_t seed = 0;
  // r(t) = pairing_ratio(rho~ ^ sigma~)/c for phi = (t/2) x^T H x is exactly
  // 1 + t L(H) + t^2 Q(H); checked at t = 1/2 per sample.
  bool decomposition_ok = false;
  double max_taylor_defect = 0.0;
  bool L_is_trace_multiple = false;
  double L_trace_coeff = 0.0;   // L(H) = coeff * tr(H)
  double L_fit_residual = 0.0;
  double kappa = 0.0;           // Q(H) = kappa * local_poly(H)
  std::string kappa_exact;
  double kappa_fit_residual = 0.0;
  bool candidate_1_16_confirmed = false;  // is kappa == 1/16?
  double candidate_1_16_residual = 0.0;   // max |Q - local/16|
  double ratio_at_2Id = 0.0;    // r(1) at H = 2 Id
  double L_at_2Id = 0.0;
  double Q_at_2Id = 0.0;
  double local_at_2Id = 0.0;
  double L_at_Id = 0.0;         // companion calibration point H = Id
  double Q_at_Id = 0.0;
  double cross_check_defect = 0.0;  // exact-rational vs field-machinery ratio
  bool ok = false;              // decomposition + both fits within 1e-8
};

// Exact-rational decomposition of the intrinsic ratio over random symmetric
// Hessians (entries k/8, k in [-16,16]), cross-checked against the analytic
// field pipeline.
ExpansionReport expansion_oracle(int samples, std::uint64_t seed);

nlohmann::ordered_json expansion_json(const ExpansionReport& rep);

}  // namespace sympcy
