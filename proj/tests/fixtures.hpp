// Shared fixtures: the canonical bathtub configuration used across the test
// suites, plus a handful of high-precision reference constants for it.
#pragma once

#include "json.hpp"
#include "virtage/hazard.hpp"

namespace fixtures {

inline virtage::HazardSpec::Params canonical_params() {
  virtage::HazardSpec::Params p;
  p.lambda = 1.0;
  p.alpha1 = 0.6;
  p.alpha2 = 0.5;
  p.beta1 = 2.5;
  p.beta2 = 2.8;
  p.a1 = 4.0;
  p.a2 = 8.0;
  return p;
}

inline virtage::HazardSpec canonical_spec() {
  return virtage::HazardSpec(canonical_params());
}

constexpr double kTau = 10.0;

// Closed-form values for the canonical parameters.
constexpr double kRateAt0 = 20.2;                       // 1 + 0.6 * 4^2.5
constexpr double kRateAt10 = 4.4822022531844965;        // 1 + 0.5 * 2^2.8
constexpr double kCumAt4 = 25.942857142857143;          // 4 + (0.6/3.5) * 4^3.5
constexpr double kCumAt8 = 29.942857142857143;
constexpr double kCumAt10 = 33.77559517084898;
constexpr double kCumAt1p5 = 19.207663847988776;
constexpr double kCum4To10 = 7.832738027991837;

// Mean first-failure time, from quadrature of the survival function.
constexpr double kMeanFirstFailure = 0.05107543019275222;

inline nlohmann::json canonical_hazard_json() {
  return nlohmann::json{{"lambda", 1.0}, {"alpha1", 0.6}, {"alpha2", 0.5}, {"beta1", 2.5},
                        {"beta2", 2.8},  {"a1", 4.0},     {"a2", 8.0}};
}

}  // namespace fixtures
