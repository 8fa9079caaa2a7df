#pragma once
// Hitchin analysis of real 3-forms on R^6: the lambda invariant, the
// endomorphism K_rho, the induced almost-complex structure J_rho, the dual
// form J_rho rho, and the positivity/negativity classification against a
// symplectic frame.
//
// Construction: A maps a 5-form mu to the unique vector w with
// iota_w vol = mu; K_rho(v) = A(iota_v rho ^ rho); lambda = tr(K^2)/6.
// lambda < 0 gives J = K / sqrt(-lambda) (taken with the raw sign of the
// construction; for rho0 = Re dz^123 this yields J = -J_std and
// J_rho rho0 = +Im dz^123 exactly, which pins all downstream conventions).
#include <Eigen/Dense>
#include <optional>

#include "sympcy/frame.hpp"
#include "sympcy/kform.hpp"

namespace sympcy {

using Mat6 = Eigen::Matrix<double, 6, 6>;

struct StableAnalysis {
  double lambda = 0;
  Mat6 K = Mat6::Zero();
  bool stable = false;
  bool complex_type = false;        // lambda < 0
  std::optional<Mat6> J;            // present iff complex_type
  std::optional<KForm> dual;        // J_rho rho, present iff complex_type
};

enum class Verdict { positive, negative, indefinite, not_stable };
const char* verdict_name(Verdict v);

struct Positivity {
  double primitive_defect = 0;      // max-norm of omega ^ rho
  Mat6 taming = Mat6::Zero();       // symmetric part of omega(X, J_rho Y)
  double antisym_defect = 0;        // max-norm of the antisymmetric part
  double min_eig = 0;
  double max_eig = 0;
  Verdict verdict = Verdict::not_stable;
};

// Stability threshold: lambda is quartic in rho, so |lambda| is compared
// against 1e-10 * ||rho||_inf^4.
StableAnalysis analyze(const KForm& rho, const SymplecticFrame& f);

Positivity classify(const KForm& rho, const SymplecticFrame& f, double tol = 1e-9);

// max-norm of (J_rho rho - sigma) normalized by the max-norm of J_rho rho.
// Throws std::domain_error when rho is not stable of complex type.
double duality_defect(const KForm& rho, const KForm& sigma, const SymplecticFrame& f);

// rho evaluated on (e_i, e_j, e_k) for arbitrary 0-based axes (with sign).
double form3_component(const KForm& rho, int i, int j, int k);

}  // namespace sympcy
