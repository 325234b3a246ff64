#include "virtage/hazard.hpp"

#include <cmath>
#include <stdexcept>

#include "virtage/errors.hpp"

namespace virtage {

std::string to_string(HazardShape shape) {
  switch (shape) {
    case HazardShape::CFR: return "CFR";
    case HazardShape::IFR: return "IFR";
    case HazardShape::DFR: return "DFR";
    case HazardShape::UFR: return "UFR";
    case HazardShape::BFR: return "BFR";
  }
  throw std::logic_error("unreachable hazard shape");
}

HazardSpec::HazardSpec(const Params& params) : HazardSpec(params, true, true) {}

HazardSpec::HazardSpec(const Params& params, bool burn_in, bool wear_out)
    : p_(params), burn_in_(burn_in), wear_out_(wear_out) {
  validate();
  pow1_ = p_.beta1 + 1.0;
  pow2_ = p_.beta2 + 1.0;
  coeff1_ = p_.alpha1 / pow1_;
  coeff2_ = p_.alpha2 / pow2_;
  burn_in_mass_ = burn_in_ ? coeff1_ * std::pow(p_.a1, pow1_) : 0.0;
  cum_a1_ = cumulative(p_.a1);
  cum_a2_ = cumulative(p_.a2);
}

HazardSpec HazardSpec::constant(double lambda) {
  Params p;
  p.lambda = lambda;
  return HazardSpec(p, false, false);
}

HazardSpec HazardSpec::burn_in_only(double lambda, double alpha1, double beta1, double a1) {
  Params p;
  p.lambda = lambda;
  p.alpha1 = alpha1;
  p.beta1 = beta1;
  p.a1 = a1;
  p.a2 = a1;
  return HazardSpec(p, true, false);
}

HazardSpec HazardSpec::wear_out_only(double lambda, double alpha2, double beta2, double a2) {
  Params p;
  p.lambda = lambda;
  p.alpha2 = alpha2;
  p.beta2 = beta2;
  p.a1 = 0.0;
  p.a2 = a2;
  return HazardSpec(p, false, true);
}

void HazardSpec::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(p_.lambda)) throw std::invalid_argument("hazard spec: lambda must be positive");
  if (burn_in_) {
    if (!positive(p_.alpha1)) throw std::invalid_argument("hazard spec: alpha1 must be positive");
    if (!positive(p_.beta1)) throw std::invalid_argument("hazard spec: beta1 must be positive");
  }
  if (wear_out_) {
    if (!positive(p_.alpha2)) throw std::invalid_argument("hazard spec: alpha2 must be positive");
    if (!positive(p_.beta2)) throw std::invalid_argument("hazard spec: beta2 must be positive");
  }
  if (!std::isfinite(p_.a1) || p_.a1 < 0.0) {
    throw std::invalid_argument("hazard spec: a1 must be finite and >= 0");
  }
  if (!std::isfinite(p_.a2) || p_.a2 < p_.a1) {
    throw std::invalid_argument("hazard spec: a2 must be finite and >= a1");
  }
  if (burn_in_ && wear_out_ && p_.a2 - p_.a1 < p_.a1 && !p_.allow_short_useful_life) {
    throw std::invalid_argument(
        "hazard spec: useful life a2 - a1 is shorter than the burn-in period a1 "
        "(set allow_short_useful_life to accept)");
  }
}

double HazardSpec::rate(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("hazard rate requires t >= 0");
  if (burn_in_ && t <= p_.a1) return p_.lambda + p_.alpha1 * std::pow(p_.a1 - t, p_.beta1);
  if (wear_out_ && t > p_.a2) return p_.lambda + p_.alpha2 * std::pow(t - p_.a2, p_.beta2);
  return p_.lambda;
}

double HazardSpec::cumulative(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("cumulative hazard requires t >= 0");
  double value = p_.lambda * t;
  if (burn_in_) {
    value += t < p_.a1 ? burn_in_mass_ - coeff1_ * std::pow(p_.a1 - t, pow1_) : burn_in_mass_;
  }
  if (wear_out_ && t > p_.a2) {
    value += coeff2_ * std::pow(t - p_.a2, pow2_);
  }
  return value;
}

double HazardSpec::cumulative_between(double s, double t) const {
  if (!(s >= 0.0)) throw std::domain_error("cumulative_between requires s >= 0");
  if (!(t >= s)) throw std::invalid_argument("cumulative_between requires s <= t");
  return std::max(0.0, cumulative(t) - cumulative(s));
}

double HazardSpec::inverse_cumulative(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw std::domain_error("inverse_cumulative requires finite y >= 0");
  }
  if (y == 0.0) return 0.0;
  if (y <= cum_a1_) {
    return solve_cumulative(y, 0.0, p_.a1);
  }
  if (!wear_out_ || y <= cum_a2_) {
    // Constant stretch: Lambda is linear, invert exactly.
    return p_.a1 + (y - cum_a1_) / p_.lambda;
  }
  // Wear-out stretch. Lambda(t) >= cum_a2 + lambda*(t - a2) gives a hard
  // upper end for the bracket.
  const double hi = p_.a2 + (y - cum_a2_) / p_.lambda;
  return solve_cumulative(y, p_.a2, hi);
}

double HazardSpec::solve_cumulative(double y, double lo, double hi) const {
  // Newton with a bisection safeguard: the iterate must stay inside the
  // current bracket, otherwise fall back to its midpoint. The tolerance is
  // absolute in y with a relative floor so huge y stays solvable in double.
  const double tol = std::max(kInversionTol, std::fabs(y) * 1e-14);
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double g = cumulative(t) - y;
    if (std::fabs(g) <= tol) return t;
    (g > 0.0 ? hi : lo) = t;
    if (hi - lo <= 1e-15 * std::max(1.0, t)) return t;
    const double next = t - g / rate(t);
    t = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  throw numerical_error("inverse_cumulative: iteration did not converge");
}

HazardShape HazardSpec::shape() const {
  // A burn-in phase over an empty interval contributes nothing.
  const bool burn_in = burn_in_ && p_.a1 > 0.0;
  if (!burn_in && !wear_out_) return HazardShape::CFR;
  if (!burn_in) return HazardShape::IFR;
  if (!wear_out_) return HazardShape::DFR;
  return p_.a1 == p_.a2 ? HazardShape::UFR : HazardShape::BFR;
}

nlohmann::json HazardSpec::to_json() const {
  if (!burn_in_ || !wear_out_) {
    throw std::logic_error("only fully specified two-phase hazard specs serialize to JSON");
  }
  nlohmann::json j{{"lambda", p_.lambda}, {"alpha1", p_.alpha1}, {"alpha2", p_.alpha2},
                   {"beta1", p_.beta1},   {"beta2", p_.beta2},   {"a1", p_.a1},
                   {"a2", p_.a2}};
  if (p_.allow_short_useful_life) j["allow_short_useful_life"] = true;
  return j;
}

HazardSpec HazardSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("hazard spec: expected a JSON object");
  static const char* const required[] = {"lambda", "alpha1", "alpha2", "beta1",
                                         "beta2",  "a1",     "a2"};
  Params p;
  for (const char* key : required) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw std::invalid_argument(std::string("hazard spec: missing or non-numeric key '") +
                                  key + "'");
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "allow_short_useful_life") {
      if (!value.is_boolean()) {
        throw std::invalid_argument("hazard spec: allow_short_useful_life must be a boolean");
      }
      continue;
    }
    bool known = false;
    for (const char* k : required) known = known || key == k;
    if (!known) throw std::invalid_argument("hazard spec: unknown key '" + key + "'");
  }
  p.lambda = j.at("lambda").get<double>();
  p.alpha1 = j.at("alpha1").get<double>();
  p.alpha2 = j.at("alpha2").get<double>();
  p.beta1 = j.at("beta1").get<double>();
  p.beta2 = j.at("beta2").get<double>();
  p.a1 = j.at("a1").get<double>();
  p.a2 = j.at("a2").get<double>();
  p.allow_short_useful_life = j.value("allow_short_useful_life", false);
  return HazardSpec(p);
}

}  // namespace virtage
