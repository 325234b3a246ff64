#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "virtage/hazard.hpp"

namespace virtage {

/// Repair effectiveness delta in [0, 1]: 0 is minimal (as bad as old),
/// 1 restores the virtual age to the end of the burn-in period a1.
class RepairDegree {
 public:
  explicit RepairDegree(double value);

  double value() const { return value_; }

  static RepairDegree minimal() { return RepairDegree(0.0); }
  static RepairDegree perfect() { return RepairDegree(1.0); }

 private:
  double value_;
};

struct RepairEvent {
  double time;
  double age_before;
  RepairDegree degree;
  double age_after;
};

/// Virtual age of a repairable system, tracked alongside calendar time.
///
/// Between repairs the virtual age grows at unit rate. When calendar time
/// first reaches the change point a1 of the governing hazard, the virtual age
/// snaps to the calendar age (a one-time reset; it can jump downward when
/// earlier repairs pushed the age ahead of the clock). A repair of degree
/// delta contracts the age toward a1:
///
///   age_after = age_before - delta * (age_before - a1)
///
/// which pulls a young system (age < a1, still in burn-in) forward and an
/// aged system (age > a1) back; both directions move toward the start of the
/// useful-life phase.
struct VirtualAgeState {
  double now = 0.0;
  double age = 0.0;
  double a1 = 0.0;
  bool crossed_a1 = false;
  std::vector<RepairEvent> history;
};

/// Brand-new system governed by `spec` at calendar time 0.
VirtualAgeState initial_state(const HazardSpec& spec);

/// Move calendar time forward to `to` (>= state.now), applying the one-time
/// age reset if the step crosses a1.
VirtualAgeState advance(VirtualAgeState state, double to);

/// Apply a repair at the current instant and record it in the history.
/// delta = 0 leaves the age bit-for-bit unchanged; delta = 1 lands on a1
/// exactly.
VirtualAgeState apply_repair(VirtualAgeState state, RepairDegree degree);

/// Failure intensity the system currently experiences: the hazard evaluated
/// at the virtual age.
double conditional_intensity(const VirtualAgeState& state, const HazardSpec& spec);

/// Replay a repair history ((time, degree) pairs, strictly increasing times)
/// and sample the virtual age at each grid point (sorted ascending). Repairs
/// at a grid time are applied before the age is read.
std::vector<std::pair<double, double>> virtual_age_curve(
    std::span<const std::pair<double, double>> events, const HazardSpec& spec,
    std::span<const double> grid);

/// CSV export: header `index,time,age_before,degree,age_after`, one row per
/// event with 1-based indices, values in decimal notation (12 significant
/// digits).
std::string history_csv(std::span<const RepairEvent> events);

}  // namespace virtage
