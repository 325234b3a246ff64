#include "virtage/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "virtage/csv.hpp"

namespace virtage {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // 99.5th percentile of the standard normal

/// A stretch of calendar time over which the virtual age grows at unit rate:
/// age(t) = age0 + (t - calendar0) for t in [calendar0, calendar0 + length].
struct Segment {
  double calendar0;
  double age0;
  double length;
};

/// Between failures the age only moves linearly, except for the one-time
/// snap to calendar age when the clock first reaches a1. So the remaining
/// horizon splits into at most two linear segments.
int segments_until(const VirtualAgeState& state, double horizon, Segment out[2]) {
  int n = 0;
  if (!state.crossed_a1 && state.now < state.a1) {
    out[n++] = Segment{state.now, state.age, std::min(state.a1, horizon) - state.now};
    if (horizon > state.a1) out[n++] = Segment{state.a1, state.a1, horizon - state.a1};
  } else {
    out[n++] = Segment{state.now, state.age, horizon - state.now};
  }
  return n;
}

/// Inversion: spend the exponential budget `e` segment by segment; the
/// failure lands where the accumulated conditional hazard first reaches it.
double next_failure_inversion(const HazardSpec& spec, const VirtualAgeState& state,
                              double horizon, double e) {
  Segment segs[2];
  const int n = segments_until(state, horizon, segs);
  for (int i = 0; i < n; ++i) {
    const Segment& seg = segs[i];
    if (!(seg.length > 0.0)) continue;
    const double mass = spec.cumulative_between(seg.age0, seg.age0 + seg.length);
    if (e <= mass) {
      const double age = spec.inverse_cumulative(spec.cumulative(seg.age0) + e);
      const double t = seg.calendar0 + (age - seg.age0);
      return std::clamp(t, seg.calendar0, seg.calendar0 + seg.length);
    }
    e -= mass;
  }
  return horizon;  // survived the whole window
}

/// Thinning: candidates from a constant majorant, refreshed at every
/// candidate. The hazard is bathtub-shaped, so its supremum over an age
/// interval sits at an endpoint; the interior change points are evaluated
/// too for safety. Discarding a candidate that overshoots the segment end is
/// exact by memorylessness.
double next_failure_thinning(const HazardSpec& spec, const VirtualAgeState& state,
                             double horizon, RngStream& rng) {
  Segment segs[2];
  const int n = segments_until(state, horizon, segs);
  for (int i = 0; i < n; ++i) {
    const Segment& seg = segs[i];
    if (!(seg.length > 0.0)) continue;
    const double calendar_end = seg.calendar0 + seg.length;
    const double age_end = seg.age0 + seg.length;
    double t = seg.calendar0;
    while (true) {
      const double age_now = seg.age0 + (t - seg.calendar0);
      double majorant = std::max(spec.rate(age_now), spec.rate(age_end));
      if (age_now < spec.a1() && spec.a1() < age_end) {
        majorant = std::max(majorant, spec.rate(spec.a1()));
      }
      if (age_now < spec.a2() && spec.a2() < age_end) {
        majorant = std::max(majorant, spec.rate(spec.a2()));
      }
      if (!(std::isfinite(majorant) && majorant > 0.0)) {
        throw std::invalid_argument("thinning: majorant is not finite and positive");
      }
      t += rng.exponential() / majorant;
      if (t >= calendar_end) break;
      const double age = seg.age0 + (t - seg.calendar0);
      if (rng.uniform01() * majorant <= spec.rate(age)) return t;
    }
  }
  return horizon;
}

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
}

}  // namespace

std::string to_string(SamplingMethod method) {
  switch (method) {
    case SamplingMethod::Inversion: return "inversion";
    case SamplingMethod::Thinning: return "thinning";
  }
  throw std::logic_error("unreachable sampling method");
}

SamplingMethod sampling_method_from_string(const std::string& name) {
  if (name == "inversion") return SamplingMethod::Inversion;
  if (name == "thinning") return SamplingMethod::Thinning;
  throw std::invalid_argument("unknown sampling method '" + name +
                              "' (expected inversion or thinning)");
}

double first_failure_from_exponential(const HazardSpec& spec, double e) {
  if (!(e >= 0.0)) throw std::domain_error("exponential draw must be >= 0");
  return spec.inverse_cumulative(e);
}

double sample_first_failure(const HazardSpec& spec, RngStream& rng) {
  return first_failure_from_exponential(spec, rng.exponential());
}

Trajectory simulate_trajectory(const HazardSpec& spec, const RepairPolicy& policy,
                               double horizon, RngStream& rng, SamplingMethod method) {
  check_horizon(horizon);
  VirtualAgeState state = initial_state(spec);
  Trajectory traj;
  traj.horizon = horizon;
  traj.seed = rng.seed();
  traj.replication = rng.replication();
  while (true) {
    const double t = method == SamplingMethod::Inversion
                         ? next_failure_inversion(spec, state, horizon, rng.exponential())
                         : next_failure_thinning(spec, state, horizon, rng);
    if (t >= horizon) break;
    state = advance(std::move(state), t);
    const RepairDegree degree = policy.degree_for(state.history.size(), t, spec.a1());
    state = apply_repair(std::move(state), degree);
    traj.failure_times.push_back(t);
  }
  traj.events = std::move(state.history);
  return traj;
}

Trajectory simulate_nhpp(const HazardSpec& spec, double horizon, RngStream& rng) {
  check_horizon(horizon);
  Trajectory traj;
  traj.horizon = horizon;
  traj.seed = rng.seed();
  traj.replication = rng.replication();
  double y = 0.0;
  while (true) {
    y += rng.exponential();
    const double t = spec.inverse_cumulative(y);
    if (t >= horizon) break;
    traj.failure_times.push_back(t);
    traj.events.push_back(RepairEvent{t, t, RepairDegree::minimal(), t});
  }
  return traj;
}

Trajectory simulate_renewal(const HazardSpec& spec, double horizon, RngStream& rng) {
  check_horizon(horizon);
  Trajectory traj;
  traj.horizon = horizon;
  traj.seed = rng.seed();
  traj.replication = rng.replication();
  double t = 0.0;
  while (true) {
    const double lifetime = sample_first_failure(spec, rng);
    t += lifetime;
    if (t >= horizon) break;
    traj.failure_times.push_back(t);
    traj.events.push_back(RepairEvent{t, lifetime, RepairDegree::perfect(), 0.0});
  }
  return traj;
}

void for_each_trajectory_ordered(const HazardSpec& spec, const RepairPolicy& policy,
                                 double horizon, std::uint64_t reps, std::uint64_t seed,
                                 SamplingMethod method, unsigned threads,
                                 const std::function<void(const Trajectory&)>& sink) {
  check_horizon(horizon);
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  const unsigned workers =
      std::max(1u, std::min(threads, std::thread::hardware_concurrency() == 0
                                         ? threads
                                         : std::thread::hardware_concurrency()));

  constexpr std::uint64_t kBlock = 4096;
  std::vector<Trajectory> block;
  for (std::uint64_t base = 0; base < reps; base += kBlock) {
    const std::uint64_t count = std::min(kBlock, reps - base);
    block.assign(count, Trajectory{});
    auto run_one = [&](std::uint64_t i) {
      RngStream rng(seed, base + i);
      block[i] = simulate_trajectory(spec, policy, horizon, rng, method);
    };
    if (workers == 1 || count == 1) {
      for (std::uint64_t i = 0; i < count; ++i) run_one(i);
    } else {
      // Dynamic work stealing is fine for determinism: replication i's
      // result depends only on (seed, base + i), not on which worker runs it.
      std::atomic<std::uint64_t> next{0};
      std::exception_ptr error;
      std::mutex error_mutex;
      auto worker = [&] {
        try {
          for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            run_one(i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (error) std::rethrow_exception(error);
    }
    for (std::uint64_t i = 0; i < count; ++i) sink(block[i]);
  }
}

void CountAccumulator::add(double count) {
  ++n;
  sum += count;
  sum_sq += count * count;
}

EstimateResult CountAccumulator::result(std::uint64_t seed, SamplingMethod method) const {
  if (n == 0) throw std::logic_error("CountAccumulator: no replications recorded");
  const double reps = static_cast<double>(n);
  const double mean = sum / reps;
  double std_error = std::numeric_limits<double>::quiet_NaN();
  if (n >= 2) {
    const double variance = std::max(0.0, (sum_sq - sum * sum / reps) / (reps - 1.0));
    std_error = std::sqrt(variance / reps);
  }

  EstimateResult out;
  out.value = mean;
  out.method = EstimateMethod::MonteCarlo;
  out.error_bound = std_error;
  out.mc = MonteCarloStats{std_error, mean - kZ99 * std_error, mean + kZ99 * std_error, n, seed};
  out.metadata = nlohmann::json{{"seed", seed},
                                {"reps", n},
                                {"sampler", to_string(method)},
                                {"std_error", std::isfinite(std_error)
                                                  ? nlohmann::json(std_error)
                                                  : nlohmann::json()},
                                {"ci_low", std::isfinite(out.mc->ci_low)
                                               ? nlohmann::json(out.mc->ci_low)
                                               : nlohmann::json()},
                                {"ci_high", std::isfinite(out.mc->ci_high)
                                                ? nlohmann::json(out.mc->ci_high)
                                                : nlohmann::json()}};
  return out;
}

EstimateResult estimate_expected_failures_mc(const HazardSpec& spec,
                                             const RepairPolicy& policy, double horizon,
                                             std::uint64_t reps, std::uint64_t seed,
                                             SamplingMethod method, unsigned threads) {
  if (reps < 2) {
    throw std::invalid_argument("estimate_expected_failures_mc needs reps >= 2");
  }
  CountAccumulator acc;
  for_each_trajectory_ordered(spec, policy, horizon, reps, seed, method, threads,
                              [&](const Trajectory& traj) {
                                acc.add(static_cast<double>(traj.failure_times.size()));
                              });
  return acc.result(seed, method);
}

std::string trajectories_csv(std::span<const Trajectory> trajectories) {
  std::ostringstream out;
  out << "replication,index,time,degree,age_after\n";
  for (const Trajectory& traj : trajectories) {
    for (std::size_t i = 0; i < traj.events.size(); ++i) {
      const RepairEvent& e = traj.events[i];
      out << traj.replication << ',' << (i + 1) << ',' << format_decimal(e.time, 12) << ','
          << format_decimal(e.degree.value(), 12) << ',' << format_decimal(e.age_after, 12)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace virtage
