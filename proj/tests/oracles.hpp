// Test-local numerical oracles, deliberately kept independent of the library
// implementations they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Romberg integration (trapezoid refinement + Richardson extrapolation) of a
/// smooth integrand. Split manually at kinks before calling.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  constexpr int kMaxRows = 22;
  static thread_local double table[kMaxRows][kMaxRows];
  if (!(b > a)) return 0.0;
  double h = b - a;
  table[0][0] = 0.5 * h * (f(a) + f(b));
  for (int i = 1; i < kMaxRows; ++i) {
    h *= 0.5;
    double sum = 0.0;
    const std::int64_t points = std::int64_t(1) << (i - 1);
    for (std::int64_t k = 0; k < points; ++k) sum += f(a + (2.0 * k + 1.0) * h);
    table[i][0] = 0.5 * table[i - 1][0] + h * sum;
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 4.0;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
    }
    if (i >= 4 && std::fabs(table[i][i] - table[i - 1][i - 1]) <= tol) return table[i][i];
  }
  return table[kMaxRows - 1][kMaxRows - 1];
}

/// Kolmogorov-Smirnov statistic of a sample against a continuous cdf.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = cdf(samples[i]);
    d = std::max(d, u - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - u);
  }
  return d;
}

/// Asymptotic KS critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n) {
  return 1.62762 / std::sqrt(static_cast<double>(n));
}

struct Chi2Result {
  double statistic;
  int dof;
};

/// Two-sample chi-square on per-bin counts (same binning for both samples),
/// pooling adjacent bins until each pooled bin holds at least 10 observations.
inline Chi2Result chi2_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("chi2_two_sample: size mismatch");
  std::vector<double> pa, pb;
  double ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    if (ca + cb >= 10.0) {
      pa.push_back(ca);
      pb.push_back(cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (pa.empty()) {
      pa.push_back(ca);
      pb.push_back(cb);
    } else {
      pa.back() += ca;
      pb.back() += cb;
    }
  }
  const double total_a = std::accumulate(pa.begin(), pa.end(), 0.0);
  const double total_b = std::accumulate(pb.begin(), pb.end(), 0.0);
  const double k1 = std::sqrt(total_b / total_a);
  const double k2 = std::sqrt(total_a / total_b);
  double stat = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double tot = pa[i] + pb[i];
    if (tot <= 0.0) continue;
    const double d = k1 * pa[i] - k2 * pb[i];
    stat += d * d / tot;
  }
  return Chi2Result{stat, static_cast<int>(pa.size()) - 1};
}

/// Upper quantile of the chi-square distribution via the Wilson-Hilferty
/// approximation; z is the matching standard-normal upper quantile.
inline double chi2_upper_quantile(int dof, double z) {
  const double k = static_cast<double>(dof);
  const double c = 2.0 / (9.0 * k);
  const double body = 1.0 - c + z * std::sqrt(c);
  return k * body * body * body;
}

struct Summary {
  double mean;
  double variance;
  double std_error;
};

inline Summary summarize(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("summarize: need at least two values");
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double variance = ss / (n - 1.0);
  return Summary{mean, variance, std::sqrt(variance / n)};
}

/// Discretized renewal equation m(t) = F(t) + int_0^t m(t-s) f(s) ds on a
/// uniform grid with the trapezoid rule; returns m(horizon).
inline double renewal_mean(const std::function<double(double)>& density,
                           const std::function<double(double)>& cdf, double horizon,
                           int steps) {
  const double h = horizon / steps;
  std::vector<double> f(steps + 1), m(steps + 1, 0.0);
  for (int i = 0; i <= steps; ++i) f[i] = density(i * h);
  for (int i = 1; i <= steps; ++i) {
    double conv = 0.0;
    for (int j = 1; j < i; ++j) conv += f[j] * m[i - j];
    // trapezoid endpoints: j=0 carries m[i] (solved for), j=i carries m[0]=0
    m[i] = (cdf(i * h) + h * conv) / (1.0 - 0.5 * h * f[0]);
  }
  return m[steps];
}

}  // namespace oracle
