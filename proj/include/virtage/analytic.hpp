#pragma once

#include <span>
#include <utility>
#include <vector>

#include "virtage/estimate.hpp"
#include "virtage/hazard.hpp"
#include "virtage/quadrature.hpp"
#include "virtage/repair.hpp"

namespace virtage {

/// Density of the first failure time of a new system:
/// f(t) = rate(t) * exp(-cumulative(t)).
double first_failure_density(const HazardSpec& spec, double t);

/// Expected number of failures in [0, tau] under the strategy "first repair
/// during burn-in is imperfect with degree delta1, every other repair is
/// minimal". Conditioning on the first failure time T1 gives
///
///   E[N(tau)] = Int_0^a1 (1 + Int_{t1}^{a1} rate(s + delta1*(a1 - t1)) ds) f(t1) dt1
///             + Lambda(tau) - Lambda(a1)
///
/// where the shift delta1*(a1 - t1) is the age the imperfect repair added.
/// The inner integral collapses to a cumulative-hazard difference, so only
/// the outer integral is numerical (adaptive Simpson, split at a few burn-in
/// knots). Requires tau > a1 and the shifted ages to stay inside the useful
/// life, which the a2 - a1 >= a1 assumption guarantees.
EstimateResult expected_failures_strategy(const HazardSpec& spec, RepairDegree delta1,
                                          double tau, const QuadratureConfig& cfg = {});

/// expected_failures_strategy evaluated over a grid of first-repair degrees;
/// returns (delta, value) pairs in input order.
std::vector<std::pair<double, double>> sweep_expected_failures(
    const HazardSpec& spec, std::span<const double> deltas, double tau,
    const QuadratureConfig& cfg = {});

}  // namespace virtage
