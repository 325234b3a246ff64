#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "virtage/estimate.hpp"
#include "virtage/hazard.hpp"
#include "virtage/policy.hpp"
#include "virtage/repair.hpp"
#include "virtage/rng.hpp"

namespace virtage {

/// Two exact ways to draw the next failure from the conditional intensity:
/// inversion maps unit exponentials through the inverse cumulative hazard,
/// thinning rejects candidates from a piecewise-constant majorant. Both
/// sample the same law; keeping both around gives a built-in cross-check.
enum class SamplingMethod { Inversion, Thinning };

std::string to_string(SamplingMethod method);
SamplingMethod sampling_method_from_string(const std::string& name);

/// One simulated failure/repair path over [0, horizon). A failure landing
/// exactly on the horizon is excluded. events[i] is the repair performed at
/// failure_times[i].
struct Trajectory {
  std::vector<double> failure_times;
  std::vector<RepairEvent> events;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
};

/// Time of the first failure of a brand-new system: Lambda^{-1}(E) with E a
/// unit exponential.
double sample_first_failure(const HazardSpec& spec, RngStream& rng);

/// Deterministic core of sample_first_failure, exposed for forcing specific
/// quantiles in tests.
double first_failure_from_exponential(const HazardSpec& spec, double e);

/// Full virtual-age failure/repair process under a repair policy.
Trajectory simulate_trajectory(const HazardSpec& spec, const RepairPolicy& policy,
                               double horizon, RngStream& rng,
                               SamplingMethod method = SamplingMethod::Inversion);

/// Baseline: non-homogeneous Poisson process with intensity spec.rate
/// (minimal repair at every failure).
Trajectory simulate_nhpp(const HazardSpec& spec, double horizon, RngStream& rng);

/// Baseline: renewal process (replacement on every failure; the age restarts
/// from zero, recorded as a degree-1 event with age_after = 0).
Trajectory simulate_renewal(const HazardSpec& spec, double horizon, RngStream& rng);

/// Run replications 0..reps-1 with streams derived from (seed, replication)
/// and hand each finished trajectory to `sink` in replication order. Blocks
/// of replications are simulated in parallel over `threads` workers; the
/// output is byte-for-byte independent of the thread count.
void for_each_trajectory_ordered(const HazardSpec& spec, const RepairPolicy& policy,
                                 double horizon, std::uint64_t reps, std::uint64_t seed,
                                 SamplingMethod method, unsigned threads,
                                 const std::function<void(const Trajectory&)>& sink);

/// Streaming mean/standard-error accumulator for per-replication failure
/// counts, packaged as an EstimateResult with a 99% normal confidence
/// interval. With a single count the spread is unmeasurable and the interval
/// fields come out NaN.
struct CountAccumulator {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double count);
  EstimateResult result(std::uint64_t seed, SamplingMethod method) const;
};

/// Monte Carlo estimate of E[N(horizon)] from `reps` >= 2 independent
/// replications: sample mean, standard error and a 99% normal confidence
/// interval. Deterministic for fixed (seed, reps), whatever `threads` is.
EstimateResult estimate_expected_failures_mc(const HazardSpec& spec,
                                             const RepairPolicy& policy, double horizon,
                                             std::uint64_t reps, std::uint64_t seed,
                                             SamplingMethod method = SamplingMethod::Inversion,
                                             unsigned threads = 1);

/// CSV export: header `replication,index,time,degree,age_after`, one row per
/// failure, 0-based replications, 1-based failure indices within each
/// replication, 12 significant digits.
std::string trajectories_csv(std::span<const Trajectory> trajectories);

}  // namespace virtage
