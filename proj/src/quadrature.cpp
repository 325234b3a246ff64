#include "virtage/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "virtage/errors.hpp"

namespace virtage {

namespace {

double simpson(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

struct Accumulator {
  double value = 0.0;
  double error = 0.0;
};

void refine(const std::function<double(double)>& f, double a, double b, double fa, double fm,
            double fb, double whole, double tol, int depth, Accumulator& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) {
    acc.value += left + right + delta / 15.0;
    acc.error += std::fabs(delta) / 15.0;
    return;
  }
  if (depth <= 0) {
    throw numerical_error("adaptive quadrature: refinement depth exhausted before tolerance");
  }
  refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

void integrate_piece(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth, Accumulator& acc) {
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  refine(f, a, b, fa, fm, fb, whole, tol, max_depth, acc);
}

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !std::isfinite(cfg.abs_tol)) {
    throw std::invalid_argument("quadrature: abs_tol must be positive and finite");
  }
  if (cfg.max_depth < 1) {
    throw std::invalid_argument("quadrature: max_depth must be at least 1");
  }
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, const QuadratureConfig& cfg) {
  const double pts[] = {lo, hi};
  return integrate_adaptive(f, pts, cfg);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureConfig& cfg) {
  check_config(cfg);
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("quadrature: need at least two breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] <= breakpoints[i + 1])) {
      throw std::invalid_argument("quadrature: breakpoints must be sorted ascending");
    }
  }
  if (!std::isfinite(breakpoints.front()) || !std::isfinite(breakpoints.back())) {
    throw std::invalid_argument("quadrature: breakpoints must be finite");
  }

  Accumulator acc;
  const double tol_each = cfg.abs_tol / static_cast<double>(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (b > a) integrate_piece(f, a, b, tol_each, cfg.max_depth, acc);
  }
  return QuadratureResult{acc.value, acc.error};
}

}  // namespace virtage
