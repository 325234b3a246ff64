#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace virtage {

enum class EstimateMethod { Quadrature, MonteCarlo };

std::string to_string(EstimateMethod method);

struct MonteCarloStats {
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

/// One E[N(tau)] estimate together with how it was obtained and how far off
/// it can plausibly be (quadrature error estimate, or the Monte Carlo
/// standard error). error_bound is NaN only in the degenerate single-
/// replication case, where no spread is measurable.
struct EstimateResult {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::Quadrature;
  double error_bound = 0.0;
  nlohmann::json metadata;
  std::optional<MonteCarloStats> mc;

  /// {"value", "method", "error_bound", "metadata"}; non-finite numbers
  /// serialize as null.
  nlohmann::json to_json() const;

  /// Monte Carlo report shape: {"mean", "std_error", "ci_low", "ci_high",
  /// "reps", "seed", "method"}. Requires mc to be populated.
  nlohmann::json to_mc_json() const;
};

}  // namespace virtage
