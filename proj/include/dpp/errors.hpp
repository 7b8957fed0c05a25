#pragma once

#include <stdexcept>
#include <string>

namespace dpp {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature could not reach its requested tolerance.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double value, double error)
      : std::runtime_error(what), value_(value), error_(error) {}

  double value() const noexcept { return value_; }
  double error() const noexcept { return error_; }

 private:
  double value_;
  double error_;
};

/// A series could not be truncated within its term budget.
class TruncationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpp
