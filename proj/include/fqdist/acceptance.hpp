#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqdist/report.hpp"

namespace fqdist {

/// Replaces S_t membership by ||x|| = t + 1 in the sphere under test.
inline constexpr std::string_view kFaultSphereOffByOne = "sphere-off-by-one";

struct AcceptanceOptions {
  std::string fault;          // empty, or kFaultSphereOffByOne
  bool determinism_rerun = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t vacuous = 0;
  std::size_t refused = 0;
  std::string first_failure;  // empty when passed
  double elapsed_ms = 0.0;
};

struct AcceptanceResult {
  std::vector<CriterionResult> criteria;
  Report report{"acceptance"};

  bool passed() const;
  /// Description of the first failed invariant, if any.
  std::optional<std::string> first_failure() const;
};

AcceptanceResult run_acceptance(const AcceptanceOptions& options = {});

}  // namespace fqdist
