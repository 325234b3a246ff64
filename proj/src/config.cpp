#include "virtage/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace virtage {

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

double require_number(const nlohmann::json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string(where) + ": missing or non-numeric key '" + key +
                                "'");
  }
  return j.at(key).get<double>();
}

std::uint64_t require_uint(const nlohmann::json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw std::invalid_argument(std::string(where) + ": missing or non-integer key '" + key +
                                "'");
  }
  return j.at(key).get<std::uint64_t>();
}

}  // namespace

RepairPolicy policy_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("policy: expected an object with a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant_degree") {
    reject_unknown_keys(j, {"type", "delta"}, "policy");
    return RepairPolicy::constant_degree(require_number(j, "delta", "policy"));
  }
  if (type == "first_imperfect_then_minimal") {
    reject_unknown_keys(j, {"type", "delta1"}, "policy");
    return RepairPolicy::first_imperfect_then_minimal(require_number(j, "delta1", "policy"));
  }
  if (type == "degree_sequence") {
    reject_unknown_keys(j, {"type", "deltas"}, "policy");
    if (!j.contains("deltas") || !j.at("deltas").is_array()) {
      throw std::invalid_argument("policy: degree_sequence needs an array 'deltas'");
    }
    std::vector<double> degrees;
    for (const auto& v : j.at("deltas")) {
      if (!v.is_number()) throw std::invalid_argument("policy: deltas must be numeric");
      degrees.push_back(v.get<double>());
    }
    return RepairPolicy::degree_sequence(std::move(degrees));
  }
  throw std::invalid_argument("policy: unknown type '" + type + "'");
}

nlohmann::json policy_to_json(const RepairPolicy& policy) {
  switch (policy.kind()) {
    case PolicyKind::ConstantDegree:
      return {{"type", "constant_degree"}, {"delta", policy.scalar_degree()}};
    case PolicyKind::FirstImperfectThenMinimal:
      return {{"type", "first_imperfect_then_minimal"}, {"delta1", policy.scalar_degree()}};
    case PolicyKind::DegreeSequence:
      return {{"type", "degree_sequence"}, {"deltas", policy.degrees()}};
  }
  throw std::logic_error("unreachable policy kind");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  reject_unknown_keys(j, {"hazard", "policy", "tau", "quadrature", "mc"}, "config");
  if (!j.contains("hazard")) throw std::invalid_argument("config: missing 'hazard' section");
  if (!j.contains("policy")) throw std::invalid_argument("config: missing 'policy' section");

  const double tau = require_number(j, "tau", "config");
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("config: tau must be positive and finite");
  }

  std::optional<QuadratureConfig> quadrature;
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    reject_unknown_keys(q, {"abs_tol", "max_depth"}, "quadrature");
    QuadratureConfig cfg;
    cfg.abs_tol = require_number(q, "abs_tol", "quadrature");
    cfg.max_depth = static_cast<int>(require_uint(q, "max_depth", "quadrature"));
    if (!(cfg.abs_tol > 0.0)) {
      throw std::invalid_argument("quadrature: abs_tol must be positive");
    }
    if (cfg.max_depth < 1) {
      throw std::invalid_argument("quadrature: max_depth must be at least 1");
    }
    quadrature = cfg;
  }

  std::optional<McSettings> mc;
  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    reject_unknown_keys(m, {"reps", "seed"}, "mc");
    McSettings settings;
    settings.reps = require_uint(m, "reps", "mc");
    settings.seed = require_uint(m, "seed", "mc");
    if (settings.reps < 1) throw std::invalid_argument("mc: reps must be at least 1");
    mc = settings;
  }

  return RunConfig{HazardSpec::from_json(j.at("hazard")), policy_from_json(j.at("policy")),
                   tau, quadrature, mc};
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j{{"hazard", hazard.to_json()},
                   {"policy", policy_to_json(policy)},
                   {"tau", tau}};
  if (quadrature) {
    j["quadrature"] = {{"abs_tol", quadrature->abs_tol}, {"max_depth", quadrature->max_depth}};
  }
  if (mc) {
    j["mc"] = {{"reps", mc->reps}, {"seed", mc->seed}};
  }
  return j;
}

RunConfig RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

}  // namespace virtage
