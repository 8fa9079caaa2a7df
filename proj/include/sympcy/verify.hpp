#pragma once
// Invariant suites for the algebraic core, Hitchin analysis, field calculus,
// and the equation layer, plus the model-potential identities on C^3.  Used
// by the CLI verify command and by the test harness.
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace sympcy {

struct CheckResult {
  std::string name;
  bool pass = false;
  double defect = 0.0;
  double tolerance = 0.0;
  std::string note;
};

std::vector<CheckResult> verify_exterior(std::uint64_t seed, int cases, bool inject_star_sign_error);
std::vector<CheckResult> verify_stable3(std::uint64_t seed, int cases);
std::vector<CheckResult> verify_fields(std::uint64_t seed);
std::vector<CheckResult> verify_equation(std::uint64_t seed);
std::vector<CheckResult> verify_example_c3();

// Full suite; inject_star_sign_error corrupts the star tables to prove the
// involution check can fail.
std::vector<CheckResult> verify_all(std::uint64_t seed, bool inject_star_sign_error = false);

nlohmann::ordered_json verify_json(const std::vector<CheckResult>& checks);

}  // namespace sympcy
