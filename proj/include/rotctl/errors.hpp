#pragma once

#include <stdexcept>
#include <string>

namespace rotctl {

// Invalid argument or precondition violation (negative J, empty window, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method failed to converge or a residual check failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// lambda passed to the amplitude formula is not the largest eigenvalue.
class InconsistentLambdaError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Requested amplitudes cannot be produced by a single ladder pass.
class InfeasibleTargetError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Population leaked into the top buffer states of the truncated basis.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double leakage)
      : std::runtime_error(what), leakage_(leakage) {}
  double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rotctl
