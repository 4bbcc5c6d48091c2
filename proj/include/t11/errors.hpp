#pragma once

#include <stdexcept>
#include <string>

namespace t11 {

/// A point or argument outside the chart where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The metric matrix is not invertible to the conditioning threshold, or not
/// positive-definite.
class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The deformed transverse metric g^T + i dd-bar(phi) left the positive cone.
class ConeExitError : public std::runtime_error {
 public:
  ConeExitError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// A basic function expected to satisfy dd-bar(phi) = 0 does not.
class NotPluriharmonicError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-step integration rejected a step whose local error estimate is too large.
class StepRejectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace t11
