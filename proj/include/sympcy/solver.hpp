#pragma once
// Newton-Krylov solution of residual(phi, F) = 0 in the mean-zero gauge:
// exact Jacobian-vector products from the bilinear structure, restarted GMRES
// right-preconditioned by the inverse of the constant-coefficient
// linearization at phi = 0 (a spectral multiplier), optional line-search
// damping and amplitude continuation.
#include <optional>
#include <string>
#include <vector>

#include "sympcy/diagnose.hpp"
#include "sympcy/equation.hpp"

namespace sympcy {

struct SolveOptions {
  int max_newton = 20;
  double newton_tol = 1e-10;   // residual max-norm
  double krylov_tol = 1e-8;    // relative GMRES tolerance
  enum class Damping { none, line_search_halving };
  Damping damping = Damping::line_search_halving;
  int continuation_steps = 1;  // homotopy F <- t F
  std::optional<FormField> seed_phi;
  int gmres_restart = 40;
  int gmres_maxit = 200;
  bool with_ricci = true;      // run the Ricci probe in the final diagnostics
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // one entry per Newton evaluation
  std::vector<double> step_sizes;        // accepted damping factor per step
  FormField phi;                         // mean-zero
  Diagnostics diagnostics;
  std::string stop_reason;
  bool stability_flag = false;  // rho~ lost stability at some point mid-iteration
};

// Exact directional derivative of residual at phi in direction psi.
FormField jvp(const FormField& phi, const FormField& psi, const RHSData& rhs,
              const SymplecticFrame& fr, const std::pair<FormField, FormField>& Omega);

// The linearization at phi = 0 is a constant-coefficient operator, diagonal in
// Fourier space; sampled once per grid by applying jvp(0, .) to a delta
// impulse.  Modes where the multiplier (numerically) vanishes - the zero mode
// and Nyquist-killed modes - are "dead": the gauge projection removes them.
struct SpectralPrecond {
  Grid grid;
  std::vector<double> m;     // real multiplier per mode
  std::vector<char> dead;
  void apply_inverse(const double* in, double* out) const;
  void project(const double* in, double* out) const;
};

SpectralPrecond build_precond(const SymplecticFrame& fr,
                              const std::pair<FormField, FormField>& Omega, const Grid& g);

SolveReport solve(const RHSData& rhs, const SymplecticFrame& fr,
                  const std::pair<FormField, FormField>& Omega, const SolveOptions& opts);

nlohmann::ordered_json solve_report_json(const SolveReport& rep);

}  // namespace sympcy
