#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "virtage/analytic.hpp"
#include "virtage/simulate.hpp"

using virtage::HazardSpec;
using virtage::RepairPolicy;
using virtage::RngStream;
using virtage::SamplingMethod;
using virtage::Trajectory;

namespace {

std::vector<double> counts_for(const HazardSpec& spec, const RepairPolicy& policy,
                               double horizon, std::uint64_t reps, std::uint64_t seed,
                               SamplingMethod method) {
  std::vector<double> counts;
  counts.reserve(reps);
  virtage::for_each_trajectory_ordered(
      spec, policy, horizon, reps, seed, method, 4,
      [&](const Trajectory& t) { counts.push_back(static_cast<double>(t.failure_times.size())); });
  return counts;
}

std::vector<double> histogram(const std::vector<double>& counts, std::size_t bins) {
  std::vector<double> h(bins, 0.0);
  for (double c : counts) {
    const std::size_t k = std::min(bins - 1, static_cast<std::size_t>(c));
    h[k] += 1.0;
  }
  return h;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct across replications") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool all_equal_c = true;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    all_equal_c = all_equal_c && (va == c.next_u64());
  }
  CHECK(!all_equal_c);

  RngStream u(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform01();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("first-failure sampling inverts the cumulative hazard") {
  const HazardSpec spec = fixtures::canonical_spec();
  CHECK(virtage::first_failure_from_exponential(spec, 0.0) == 0.0);
  CHECK(std::fabs(virtage::first_failure_from_exponential(spec, fixtures::kCumAt4) - 4.0) <=
        1e-9);
  CHECK_THROWS_AS(virtage::first_failure_from_exponential(spec, -1.0), std::domain_error);
}

TEST_CASE("first-failure sample passes a KS test against the analytic cdf") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::size_t n = 10000;
  RngStream rng(2024, 0);
  std::vector<double> sample;
  sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) sample.push_back(virtage::sample_first_failure(spec, rng));
  const double d = oracle::ks_statistic(
      sample, [&](double t) { return 1.0 - std::exp(-spec.cumulative(t)); });
  CHECK(d <= oracle::ks_critical_1pct(n));
}

TEST_CASE("first-failure mean matches quadrature of the survival function") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::size_t n = 100000;
  std::vector<double> sample;
  sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(555, i);
    sample.push_back(virtage::sample_first_failure(spec, rng));
  }
  const auto s = oracle::summarize(sample);
  const double reference = oracle::integrate(
      [&](double t) { return std::exp(-spec.cumulative(t)); }, 0.0, 4.0, 1e-12);
  CHECK(std::fabs(reference - fixtures::kMeanFirstFailure) <= 1e-9);
  CHECK(std::fabs(s.mean - reference) <= 3.0 * s.std_error);
}

TEST_CASE("nhpp baseline reproduces the mean and Poisson dispersion") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::size_t reps = 20000;
  std::vector<double> counts;
  counts.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(99, r);
    const Trajectory t = virtage::simulate_nhpp(spec, 4.0, rng);
    counts.push_back(static_cast<double>(t.failure_times.size()));
    double prev = 0.0;
    for (double ft : t.failure_times) {
      CHECK(ft > prev);
      CHECK(ft < 4.0);
      prev = ft;
    }
  }
  const auto s = oracle::summarize(counts);
  CHECK(std::fabs(s.mean - fixtures::kCumAt4) <= 3.0 * s.std_error);
  const double dispersion = s.variance / s.mean;
  CHECK(dispersion >= 0.95);
  CHECK(dispersion <= 1.05);
}

TEST_CASE("nhpp over a vanishing horizon is empty") {
  const HazardSpec spec = fixtures::canonical_spec();
  RngStream rng(1, 0);
  CHECK(virtage::simulate_nhpp(spec, 1e-9, rng).failure_times.empty());
  CHECK_THROWS_AS(virtage::simulate_nhpp(spec, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(virtage::simulate_nhpp(spec, -1.0, rng), std::invalid_argument);
}

TEST_CASE("renewal baseline on a constant hazard is a Poisson process") {
  const HazardSpec cfr = HazardSpec::constant(2.0);
  const std::size_t reps = 20000;
  std::vector<double> counts;
  counts.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(7, r);
    counts.push_back(
        static_cast<double>(virtage::simulate_renewal(cfr, 5.0, rng).failure_times.size()));
  }
  const auto s = oracle::summarize(counts);
  CHECK(std::fabs(s.mean - 10.0) <= 4.0 * s.std_error);
  const double dispersion = s.variance / s.mean;
  CHECK(dispersion >= 0.95);
  CHECK(dispersion <= 1.05);
}

TEST_CASE("renewal baseline agrees with a discretized renewal-equation solve") {
  const HazardSpec spec = fixtures::canonical_spec();
  const double horizon = 1.5;
  const std::size_t reps = 20000;
  std::vector<double> counts;
  counts.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(31337, r);
    counts.push_back(static_cast<double>(
        virtage::simulate_renewal(spec, horizon, rng).failure_times.size()));
  }
  const auto s = oracle::summarize(counts);
  const double solve = oracle::renewal_mean(
      [&](double t) { return virtage::first_failure_density(spec, t); },
      [&](double t) { return 1.0 - std::exp(-spec.cumulative(t)); }, horizon, 6000);
  // the n=6000 trapezoid solve itself carries ~1e-3 discretization error
  CHECK(std::fabs(s.mean - solve) <= 3.0 * s.std_error + 0.02);
}

TEST_CASE("renewal baseline matches the asymptotic renewal mean at a long horizon") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::size_t reps = 10000;
  std::vector<double> counts;
  counts.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(2718, r);
    counts.push_back(static_cast<double>(
        virtage::simulate_renewal(spec, fixtures::kTau, rng).failure_times.size()));
  }
  const auto s = oracle::summarize(counts);
  // t/mu + (var - mu^2) / (2 mu^2) with lifetime moments from quadrature
  const double asymptotic = 195.82337298222845;
  CHECK(std::fabs(s.mean - asymptotic) <= std::max(1.0, 4.0 * s.std_error));
}

TEST_CASE("trajectories satisfy the structural invariants for every policy kind") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::vector<RepairPolicy> policies{
      RepairPolicy::constant_degree(0.3),
      RepairPolicy::first_imperfect_then_minimal(0.9),
      RepairPolicy::degree_sequence({0.5, 0.2}),
  };
  for (const RepairPolicy& policy : policies) {
    for (std::uint64_t r = 0; r < 200; ++r) {
      RngStream rng(13, r);
      const Trajectory traj =
          virtage::simulate_trajectory(spec, policy, fixtures::kTau, rng);
      REQUIRE(traj.events.size() == traj.failure_times.size());
      CHECK(traj.seed == 13);
      CHECK(traj.replication == r);
      double prev = 0.0;
      for (std::size_t i = 0; i < traj.events.size(); ++i) {
        const virtage::RepairEvent& e = traj.events[i];
        CHECK(e.time == traj.failure_times[i]);
        CHECK(e.time > prev);
        CHECK(e.time < traj.horizon);
        const double delta = e.degree.value();
        CHECK(std::fabs((e.age_before - e.age_after) - delta * (e.age_before - 4.0)) <= 1e-12);
        prev = e.time;
      }
      if (policy.kind() == virtage::PolicyKind::FirstImperfectThenMinimal) {
        for (std::size_t i = 0; i < traj.events.size(); ++i) {
          const double expected =
              (i == 0 && traj.events[i].time <= 4.0) ? 0.9 : 0.0;
          CHECK(traj.events[i].degree.value() == expected);
        }
      }
    }
  }
}

TEST_CASE("minimal repair everywhere reduces to the nhpp baseline") {
  const HazardSpec spec = fixtures::canonical_spec();
  const std::size_t reps = 20000;
  const std::vector<double> va_counts = counts_for(
      spec, RepairPolicy::constant_degree(0.0), fixtures::kTau, reps, 404, SamplingMethod::Inversion);
  std::vector<double> nhpp_counts;
  nhpp_counts.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(505, r);
    nhpp_counts.push_back(static_cast<double>(
        virtage::simulate_nhpp(spec, fixtures::kTau, rng).failure_times.size()));
  }
  const auto sv = oracle::summarize(va_counts);
  const auto sn = oracle::summarize(nhpp_counts);
  const double pooled = std::sqrt(sv.std_error * sv.std_error + sn.std_error * sn.std_error);
  CHECK(std::fabs(sv.mean - sn.mean) <= 3.0 * pooled);
  CHECK(std::fabs(sv.mean - fixtures::kCumAt10) <= 3.0 * sv.std_error);
  // counts are Poisson with mean Lambda(tau)
  const double dispersion = sv.variance / sv.mean;
  CHECK(dispersion >= 0.95);
  CHECK(dispersion <= 1.05);
}

TEST_CASE("inversion and thinning sample the same process") {
  const HazardSpec spec = fixtures::canonical_spec();
  const RepairPolicy policy = RepairPolicy::first_imperfect_then_minimal(0.5);

  const std::size_t big = 100000;
  const auto inv = counts_for(spec, policy, fixtures::kTau, big, 808, SamplingMethod::Inversion);
  const auto thin = counts_for(spec, policy, fixtures::kTau, big, 909, SamplingMethod::Thinning);
  const auto si = oracle::summarize(inv);
  const auto st = oracle::summarize(thin);
  const double pooled = std::sqrt(si.std_error * si.std_error + st.std_error * st.std_error);
  CHECK(std::fabs(si.mean - st.mean) <= 3.0 * pooled);

  // full count distribution at the 1% level
  const std::size_t small = 10000;
  const auto inv_s =
      counts_for(spec, policy, fixtures::kTau, small, 111, SamplingMethod::Inversion);
  const auto thin_s =
      counts_for(spec, policy, fixtures::kTau, small, 222, SamplingMethod::Thinning);
  const auto chi = oracle::chi2_two_sample(histogram(inv_s, 64), histogram(thin_s, 64));
  CHECK(chi.statistic <= oracle::chi2_upper_quantile(chi.dof, 2.3263478740408408));
}

TEST_CASE("a more effective first repair lowers the expected failure count") {
  const HazardSpec spec = fixtures::canonical_spec();
  double prev_mean = 1e300;
  double prev_se = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double delta = static_cast<double>(i) / 10.0;
    const auto counts = counts_for(spec, RepairPolicy::first_imperfect_then_minimal(delta),
                                   fixtures::kTau, 20000, 60600, SamplingMethod::Inversion);
    const auto s = oracle::summarize(counts);
    const double pooled = std::sqrt(s.std_error * s.std_error + prev_se * prev_se);
    CHECK(s.mean <= prev_mean + 3.0 * pooled);
    prev_mean = s.mean;
    prev_se = s.std_error;
  }
}

TEST_CASE("estimate_expected_failures_mc reports a calibrated summary") {
  const HazardSpec spec = fixtures::canonical_spec();
  const auto r = virtage::estimate_expected_failures_mc(
      spec, RepairPolicy::first_imperfect_then_minimal(0.5), fixtures::kTau, 20000, 3141,
      SamplingMethod::Inversion, 4);
  REQUIRE(r.mc.has_value());
  CHECK(r.method == virtage::EstimateMethod::MonteCarlo);
  CHECK(r.mc->reps == 20000);
  CHECK(r.mc->seed == 3141);
  CHECK(r.error_bound == r.mc->std_error);
  CHECK(r.mc->ci_low < r.value);
  CHECK(r.value < r.mc->ci_high);
  CHECK(std::fabs(r.value - 14.64) <= 4.0 * r.mc->std_error + 0.005);

  const auto json = r.to_mc_json();
  CHECK(json.at("mean") == r.value);
  CHECK(json.at("reps") == 20000);
  CHECK(json.at("method") == "monte_carlo");

  CHECK_THROWS_AS(virtage::estimate_expected_failures_mc(
                      spec, RepairPolicy::constant_degree(0.0), fixtures::kTau, 1, 1),
                  std::invalid_argument);

  const auto tiny = virtage::estimate_expected_failures_mc(
      spec, RepairPolicy::constant_degree(0.0), fixtures::kTau, 2, 1);
  CHECK(std::isfinite(tiny.value));
  CHECK(std::isfinite(tiny.mc->std_error));
}

TEST_CASE("estimates are bit-identical across thread counts and runs") {
  const HazardSpec spec = fixtures::canonical_spec();
  const RepairPolicy policy = RepairPolicy::first_imperfect_then_minimal(0.7);
  const auto one = virtage::estimate_expected_failures_mc(spec, policy, fixtures::kTau, 5000,
                                                          77, SamplingMethod::Inversion, 1);
  const auto four = virtage::estimate_expected_failures_mc(spec, policy, fixtures::kTau, 5000,
                                                           77, SamplingMethod::Inversion, 4);
  const auto again = virtage::estimate_expected_failures_mc(spec, policy, fixtures::kTau, 5000,
                                                            77, SamplingMethod::Inversion, 4);
  CHECK(one.value == four.value);
  CHECK(one.mc->std_error == four.mc->std_error);
  CHECK(four.value == again.value);

  const auto other_seed = virtage::estimate_expected_failures_mc(
      spec, policy, fixtures::kTau, 5000, 78, SamplingMethod::Inversion, 4);
  CHECK(other_seed.value != one.value);
}

TEST_CASE("trajectory CSV export uses the documented schema") {
  const HazardSpec spec = fixtures::canonical_spec();
  std::vector<Trajectory> trajectories;
  for (std::uint64_t r = 0; r < 3; ++r) {
    RngStream rng(1234, r);
    trajectories.push_back(virtage::simulate_trajectory(
        spec, RepairPolicy::constant_degree(0.5), fixtures::kTau, rng));
  }
  const std::string csv = virtage::trajectories_csv(trajectories);
  REQUIRE(csv.rfind("replication,index,time,degree,age_after\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n' ? 1 : 0;
  std::size_t events = 0;
  for (const auto& t : trajectories) events += t.events.size();
  CHECK(rows == events + 1);
  CHECK(csv.find("e-") == std::string::npos);
  CHECK(csv.find("\n0,1,") != std::string::npos);  // replication 0, first failure
}
