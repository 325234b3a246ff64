#pragma once

#include <stdexcept>

namespace virtage {

/// Raised when an iterative numerical routine cannot reach its tolerance
/// (e.g. adaptive quadrature runs out of refinement depth).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace virtage
