#pragma once

#include <functional>
#include <span>

namespace virtage {

struct QuadratureConfig {
  double abs_tol = 1e-8;
  int max_depth = 60;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Simpson integration of f over [lo, hi] to absolute tolerance
/// cfg.abs_tol. error_estimate accumulates the local Richardson error terms,
/// so it bounds (conservatively, in practice) the distance to the true
/// integral. Throws numerical_error if the refinement depth is exhausted
/// before the tolerance is met, and std::invalid_argument for a bad config
/// or interval.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, const QuadratureConfig& cfg = {});

/// Same, but with the interval pre-split at the given breakpoints (sorted,
/// at least two). Useful when the integrand has known kinks; the tolerance
/// is divided evenly across the pieces.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureConfig& cfg = {});

}  // namespace virtage
