#include "virtage/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace virtage {

double first_failure_density(const HazardSpec& spec, double t) {
  return spec.rate(t) * std::exp(-spec.cumulative(t));
}

EstimateResult expected_failures_strategy(const HazardSpec& spec, RepairDegree delta1,
                                          double tau, const QuadratureConfig& cfg) {
  const double a1 = spec.a1();
  if (!(tau > a1) || !std::isfinite(tau)) {
    throw std::invalid_argument("expected_failures_strategy requires tau > a1");
  }
  // Worst case for the shifted age is a first failure at t1 = 0 repaired with
  // degree delta1: ages up to a1 + delta1*a1 enter the inner integral. They
  // must not reach the wear-out phase, or the conditioning argument breaks.
  const double max_shifted = a1 + delta1.value() * a1;
  if (spec.has_wear_out() && max_shifted > spec.a2() * (1.0 + 1e-12)) {
    throw std::domain_error(
        "expected_failures_strategy: shifted ages leave the useful life; the model "
        "needs a2 - a1 >= a1");
  }

  auto integrand = [&](double t1) {
    const double shift = delta1.value() * (a1 - t1);
    const double minimal_phase = spec.cumulative_between(t1 + shift, a1 + shift);
    return (1.0 + minimal_phase) * first_failure_density(spec, t1);
  };

  EstimateResult result;
  result.method = EstimateMethod::Quadrature;
  result.metadata = nlohmann::json{{"abs_tol", cfg.abs_tol}, {"max_depth", cfg.max_depth}};
  if (a1 > 0.0) {
    // The density decays like exp(-Lambda), so nearly all mass sits early in
    // the burn-in period; seed the subdivision accordingly.
    const double knots[] = {0.0, a1 / 8.0, a1 / 4.0, a1 / 2.0, a1};
    const QuadratureResult q = integrate_adaptive(integrand, knots, cfg);
    result.value = q.value + spec.cumulative_between(a1, tau);
    // Closed-form tail adds nothing beyond roundoff.
    result.error_bound = q.error_estimate + 1e-12;
  } else {
    // No burn-in period: the strategy degenerates to minimal repair only.
    result.value = spec.cumulative_between(0.0, tau);
    result.error_bound = 0.0;
  }
  return result;
}

std::vector<std::pair<double, double>> sweep_expected_failures(const HazardSpec& spec,
                                                               std::span<const double> deltas,
                                                               double tau,
                                                               const QuadratureConfig& cfg) {
  if (deltas.empty()) {
    throw std::invalid_argument("sweep_expected_failures: degree grid is empty");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(deltas.size());
  for (double d : deltas) {
    out.emplace_back(d, expected_failures_strategy(spec, RepairDegree(d), tau, cfg).value);
  }
  return out;
}

}  // namespace virtage
