#pragma once

#include <stdexcept>
#include <string>

namespace jacobi_riesz {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters valid for polynomials but outside the range the kernel results need.
class UnsupportedRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Kernel requested on the diagonal theta == varphi.
class DiagonalError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical method failed to reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace jacobi_riesz
