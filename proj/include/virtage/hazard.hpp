#pragma once

#include <string>

#include "json.hpp"

namespace virtage {

/// Shape classes for a failure-rate function, in the usual reliability
/// shorthand: constant, increasing, decreasing, U-shaped, bathtub.
enum class HazardShape { CFR, IFR, DFR, UFR, BFR };

std::string to_string(HazardShape shape);

/// Bathtub-shaped failure-rate function
///
///   rate(t) = lambda + alpha1 * (a1 - t)^beta1   for      t <= a1   (burn-in)
///           = lambda                             for a1 < t <= a2   (useful life)
///           = lambda + alpha2 * (t - a2)^beta2   for      t >  a2   (wear-out)
///
/// with lambda, alpha1, alpha2, beta1, beta2 > 0, beta1 >= beta2 and
/// 0 <= a1 <= a2. The cumulative hazard integrates in closed form, which is
/// what cumulative() evaluates; inverse_cumulative() solves it back with a
/// bracketed Newton iteration (the useful-life stretch is inverted exactly).
///
/// Instances are immutable and validated on construction, so a live spec is
/// always internally consistent. The burn-in and wear-out phases can be
/// disabled individually through the factory functions to obtain the
/// degenerate CFR / DFR / IFR family members.
class HazardSpec {
 public:
  struct Params {
    double lambda = 1.0;
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double beta1 = 1.0;
    double beta2 = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;
    // The repair model assumes the useful life (a1, a2] is at least as long
    // as the burn-in period, i.e. a2 - a1 >= a1. Set this to accept specs
    // that break the assumption anyway.
    bool allow_short_useful_life = false;
  };

  /// Full bathtub spec with both phases active. Throws std::invalid_argument
  /// naming the violated constraint.
  explicit HazardSpec(const Params& params);

  /// Constant rate, no burn-in or wear-out phase.
  static HazardSpec constant(double lambda);
  /// Burn-in phase only: decreasing until a1, constant ever after.
  static HazardSpec burn_in_only(double lambda, double alpha1, double beta1, double a1);
  /// Wear-out phase only: constant until a2, increasing ever after.
  static HazardSpec wear_out_only(double lambda, double alpha2, double beta2, double a2);

  /// Failure rate at age t >= 0.
  double rate(double t) const;

  /// Cumulative hazard  Lambda(t) = integral of rate over [0, t].
  double cumulative(double t) const;

  /// Lambda(t) - Lambda(s) for 0 <= s <= t; never negative.
  double cumulative_between(double s, double t) const;

  /// Solve Lambda(t) = y for t >= 0. Exact on the linear stretch; elsewhere a
  /// bracketed Newton iteration converges to |Lambda(t) - y| <= kInversionTol.
  double inverse_cumulative(double y) const;

  HazardShape shape() const;

  double lambda() const { return p_.lambda; }
  double alpha1() const { return p_.alpha1; }
  double alpha2() const { return p_.alpha2; }
  double beta1() const { return p_.beta1; }
  double beta2() const { return p_.beta2; }
  double a1() const { return p_.a1; }
  double a2() const { return p_.a2; }
  bool allow_short_useful_life() const { return p_.allow_short_useful_life; }
  bool has_burn_in() const { return burn_in_; }
  bool has_wear_out() const { return wear_out_; }

  /// Cached Lambda(a1) and Lambda(a2).
  double cumulative_at_a1() const { return cum_a1_; }
  double cumulative_at_a2() const { return cum_a2_; }

  /// JSON round-trip for fully specified (two-phase) specs. Keys: lambda,
  /// alpha1, alpha2, beta1, beta2, a1, a2, plus allow_short_useful_life only
  /// when it is set, so serialize(parse(x)) == x. Specs built through the
  /// phase-disabling factories have no JSON form and refuse to serialize.
  nlohmann::json to_json() const;
  static HazardSpec from_json(const nlohmann::json& j);

  static constexpr double kInversionTol = 1e-10;

 private:
  HazardSpec(const Params& params, bool burn_in, bool wear_out);
  void validate() const;
  double solve_cumulative(double y, double lo, double hi) const;

  Params p_;
  bool burn_in_ = true;
  bool wear_out_ = true;
  // Derived, cached at construction.
  double pow1_ = 0.0;      // beta1 + 1
  double pow2_ = 0.0;      // beta2 + 1
  double coeff1_ = 0.0;    // alpha1 / (beta1 + 1)
  double coeff2_ = 0.0;    // alpha2 / (beta2 + 1)
  double burn_in_mass_ = 0.0;  // integral of the burn-in excess over [0, a1]
  double cum_a1_ = 0.0;
  double cum_a2_ = 0.0;
};

}  // namespace virtage
