#pragma once

#include <cstddef>
#include <vector>

#include "virtage/repair.hpp"

namespace virtage {

enum class PolicyKind { ConstantDegree, FirstImperfectThenMinimal, DegreeSequence };

/// Maps a failure (0-based index, calendar time) to the repair degree to
/// apply. Policies are small immutable value objects.
class RepairPolicy {
 public:
  /// Every repair has the same degree.
  static RepairPolicy constant_degree(double delta);

  /// The first failure, if it happens during burn-in (time <= a1), gets an
  /// imperfect repair of degree delta1; every other repair is minimal.
  static RepairPolicy first_imperfect_then_minimal(double delta1);

  /// Failure i gets degrees[i]; failures beyond the list get minimal repair.
  static RepairPolicy degree_sequence(std::vector<double> degrees);

  RepairDegree degree_for(std::size_t failure_index, double failure_time, double a1) const;

  PolicyKind kind() const { return kind_; }
  const std::vector<double>& degrees() const { return degrees_; }

  /// The single degree of a scalar policy (ConstantDegree or
  /// FirstImperfectThenMinimal); throws std::logic_error for sequences.
  double scalar_degree() const;

  /// Copy of this policy with its scalar degree replaced; invalid for
  /// sequence policies.
  RepairPolicy with_scalar_degree(double delta) const;

 private:
  RepairPolicy(PolicyKind kind, std::vector<double> degrees);

  PolicyKind kind_;
  std::vector<double> degrees_;
};

}  // namespace virtage
