#include "virtage/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace virtage {

namespace {

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json();
}

}  // namespace

std::string to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::Quadrature: return "quadrature";
    case EstimateMethod::MonteCarlo: return "monte_carlo";
  }
  throw std::logic_error("unreachable estimate method");
}

nlohmann::json EstimateResult::to_json() const {
  return nlohmann::json{{"value", number_or_null(value)},
                        {"method", to_string(method)},
                        {"error_bound", number_or_null(error_bound)},
                        {"metadata", metadata}};
}

nlohmann::json EstimateResult::to_mc_json() const {
  if (!mc) throw std::logic_error("to_mc_json requires Monte Carlo statistics");
  return nlohmann::json{{"mean", number_or_null(value)},
                        {"std_error", number_or_null(mc->std_error)},
                        {"ci_low", number_or_null(mc->ci_low)},
                        {"ci_high", number_or_null(mc->ci_high)},
                        {"reps", mc->reps},
                        {"seed", mc->seed},
                        {"method", to_string(method)}};
}

}  // namespace virtage
