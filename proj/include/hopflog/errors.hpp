#pragma once

#include <stdexcept>
#include <string>

namespace hopflog {

// Invalid arguments: out-of-domain inputs, odd sizes where even ones are
// required, malformed configurations. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The fibre parametrization divides by sqrt(2(1 + p1)).
class SingularBase : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CoincidentPoints : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularPair : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Antipodal families need an even number of points (or base points).
class OddSize : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class KTooSmall : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double best_estimate, double error_bound)
      : NumericalError(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

class RejectionStall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hopflog
