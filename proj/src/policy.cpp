#include "virtage/policy.hpp"

#include <stdexcept>

namespace virtage {

RepairPolicy::RepairPolicy(PolicyKind kind, std::vector<double> degrees)
    : kind_(kind), degrees_(std::move(degrees)) {
  for (double d : degrees_) {
    RepairDegree check(d);  // validates the range
    (void)check;
  }
}

RepairPolicy RepairPolicy::constant_degree(double delta) {
  return RepairPolicy(PolicyKind::ConstantDegree, {delta});
}

RepairPolicy RepairPolicy::first_imperfect_then_minimal(double delta1) {
  return RepairPolicy(PolicyKind::FirstImperfectThenMinimal, {delta1});
}

RepairPolicy RepairPolicy::degree_sequence(std::vector<double> degrees) {
  return RepairPolicy(PolicyKind::DegreeSequence, std::move(degrees));
}

RepairDegree RepairPolicy::degree_for(std::size_t failure_index, double failure_time,
                                      double a1) const {
  switch (kind_) {
    case PolicyKind::ConstantDegree:
      return RepairDegree(degrees_[0]);
    case PolicyKind::FirstImperfectThenMinimal:
      if (failure_index == 0 && failure_time <= a1) return RepairDegree(degrees_[0]);
      return RepairDegree::minimal();
    case PolicyKind::DegreeSequence:
      if (failure_index < degrees_.size()) return RepairDegree(degrees_[failure_index]);
      return RepairDegree::minimal();
  }
  throw std::logic_error("unreachable policy kind");
}

double RepairPolicy::scalar_degree() const {
  if (kind_ == PolicyKind::DegreeSequence) {
    throw std::logic_error("degree-sequence policies have no scalar degree");
  }
  return degrees_[0];
}

RepairPolicy RepairPolicy::with_scalar_degree(double delta) const {
  if (kind_ == PolicyKind::DegreeSequence) {
    throw std::invalid_argument("cannot override the degree of a degree-sequence policy");
  }
  return RepairPolicy(kind_, {delta});
}

}  // namespace virtage
