#pragma once
// Solution diagnostics: residual norm, per-point positivity/negativity of the
// deformed pair, duality defect, volume conservation, and the Ricci probe.
#include <nlohmann/json.hpp>

#include "sympcy/equation.hpp"
#include "sympcy/ricci.hpp"
#include "sympcy/stable3.hpp"

namespace sympcy {

struct Diagnostics {
  double residual_norm = 0.0;

  bool rho_stable_everywhere = false;   // rho~ stable of complex type at all points
  bool sigma_stable_everywhere = false;
  Positivity positivity_worst{};        // classify(rho~) at the worst point (min min_eig)
  long long positivity_worst_point = 0;
  Positivity negativity_worst{};        // classify(sigma~) at the worst point (max max_eig)
  long long negativity_worst_point = 0;

  bool duality_available = false;
  double duality_worst = 0.0;
  long long duality_worst_point = 0;

  double volume_conservation_defect = 0.0;

  bool ricci_available = false;
  bool ricci_trusted = false;
  double ricci_norm = 0.0;
  double ricci_antisym_worst = 0.0;
};

Diagnostics diagnose(const FormField& phi, const RHSData& rhs, const SymplecticFrame& fr,
                     const std::pair<FormField, FormField>& Omega, bool with_ricci);

// Flat JSON object; duality_worst / ricci_norm omitted when unavailable.
nlohmann::ordered_json diagnostics_json(const Diagnostics& d);

}  // namespace sympcy
