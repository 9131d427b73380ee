#pragma once

#include <stdexcept>
#include <string>

namespace ncpl {

/// Malformed or inconsistent configuration (bad dimensions, missing fields,
/// out-of-range hyperparameters). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric computation produced a non-finite value. Maps to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested a closed-form helper the problem does not provide.
class UnsupportedCapability : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative inner solve ran out of its iteration budget.
class NonConvergenceError : public NumericError {
 public:
  NonConvergenceError(const std::string& what, long iterations, double residual)
      : NumericError(what), iterations_(iterations), residual_(residual) {}

  long iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  long iterations_;
  double residual_;
};

}  // namespace ncpl
