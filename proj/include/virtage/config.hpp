#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "virtage/hazard.hpp"
#include "virtage/policy.hpp"
#include "virtage/quadrature.hpp"

namespace virtage {

struct McSettings {
  std::uint64_t reps = 10000;
  std::uint64_t seed = 0;
};

/// A complete run description as read from a JSON config file:
///
///   {
///     "hazard":     { ... HazardSpec keys ... },
///     "policy":     {"type": "constant_degree", "delta": 0.3}
///                 | {"type": "first_imperfect_then_minimal", "delta1": 0.5}
///                 | {"type": "degree_sequence", "deltas": [0.5, 0.2]},
///     "tau":        10.0,
///     "quadrature": {"abs_tol": 1e-8, "max_depth": 60},   // optional
///     "mc":         {"reps": 100000, "seed": 42}          // optional
///   }
///
/// Optional sections keep their presence through a round trip, so
/// to_json(from_json(x)) == x up to key order. Unknown keys are rejected.
struct RunConfig {
  HazardSpec hazard;
  RepairPolicy policy;
  double tau = 0.0;
  std::optional<QuadratureConfig> quadrature;
  std::optional<McSettings> mc;

  QuadratureConfig quadrature_or_default() const { return quadrature.value_or(QuadratureConfig{}); }
  McSettings mc_or_default() const { return mc.value_or(McSettings{}); }

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Parse a config file; throws std::runtime_error if unreadable and
  /// std::invalid_argument / nlohmann::json::exception on bad content.
  static RunConfig load_file(const std::filesystem::path& path);
};

RepairPolicy policy_from_json(const nlohmann::json& j);
nlohmann::json policy_to_json(const RepairPolicy& policy);

}  // namespace virtage
