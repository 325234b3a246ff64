#include "virtage/repair.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "virtage/csv.hpp"

namespace virtage {

RepairDegree::RepairDegree(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(
        "repair degree must lie in [0, 1]: repairs neither worsen the system nor "
        "upgrade it beyond degree 1");
  }
}

VirtualAgeState initial_state(const HazardSpec& spec) {
  VirtualAgeState state;
  state.a1 = spec.a1();
  return state;
}

VirtualAgeState advance(VirtualAgeState state, double to) {
  if (!(to >= state.now)) {
    throw std::invalid_argument("advance: calendar time cannot move backwards");
  }
  if (!state.crossed_a1 && to >= state.a1) {
    // One-time reset: at calendar a1 the virtual age equals the calendar age,
    // whatever the repairs before it did.
    state.age = to;
    state.crossed_a1 = true;
  } else {
    state.age += to - state.now;
  }
  state.now = to;
  return state;
}

VirtualAgeState apply_repair(VirtualAgeState state, RepairDegree degree) {
  const double before = state.age;
  double after;
  if (degree.value() == 0.0) {
    after = before;
  } else if (degree.value() == 1.0) {
    after = state.a1;
  } else {
    after = before - degree.value() * (before - state.a1);
  }
  state.history.push_back(RepairEvent{state.now, before, degree, after});
  state.age = after;
  return state;
}

double conditional_intensity(const VirtualAgeState& state, const HazardSpec& spec) {
  return spec.rate(state.age);
}

std::vector<std::pair<double, double>> virtual_age_curve(
    std::span<const std::pair<double, double>> events, const HazardSpec& spec,
    std::span<const double> grid) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!(events[i].first >= 0.0)) {
      throw std::invalid_argument("virtual_age_curve: event times must be >= 0");
    }
    if (i > 0 && !(events[i].first > events[i - 1].first)) {
      throw std::invalid_argument("virtual_age_curve: event times must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) {
      throw std::invalid_argument("virtual_age_curve: grid points must be >= 0");
    }
    if (i > 0 && !(grid[i] >= grid[i - 1])) {
      throw std::invalid_argument("virtual_age_curve: grid must be sorted ascending");
    }
  }

  VirtualAgeState state = initial_state(spec);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(grid.size());
  std::size_t next_event = 0;
  for (double g : grid) {
    while (next_event < events.size() && events[next_event].first <= g) {
      state = advance(std::move(state), events[next_event].first);
      state = apply_repair(std::move(state), RepairDegree(events[next_event].second));
      ++next_event;
    }
    state = advance(std::move(state), g);
    curve.emplace_back(g, state.age);
  }
  return curve;
}

std::string history_csv(std::span<const RepairEvent> events) {
  std::ostringstream out;
  out << "index,time,age_before,degree,age_after\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const RepairEvent& e = events[i];
    out << (i + 1) << ',' << format_decimal(e.time, 12) << ','
        << format_decimal(e.age_before, 12) << ',' << format_decimal(e.degree.value(), 12)
        << ',' << format_decimal(e.age_after, 12) << '\n';
  }
  return out.str();
}

}  // namespace virtage
