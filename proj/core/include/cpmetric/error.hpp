#pragma once

#include <stdexcept>
#include <string>

namespace cpmetric {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or dimensions of the operands do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a mathematical precondition (Hermitian, PSD, unital, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical optimizer could not certify its result within tolerance.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, double gap)
      : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// The unitary-dilation search ran out of budget. Carries the best lambda_min
/// of V + V^* that was reached.
class DilationSearchFailed : public CertificationError {
 public:
  DilationSearchFailed(const std::string& what, double best_lambda_min, double target)
      : CertificationError(what, target - best_lambda_min),
        best_lambda_min_(best_lambda_min),
        target_(target) {}
  double best_lambda_min() const noexcept { return best_lambda_min_; }
  double target() const noexcept { return target_; }

 private:
  double best_lambda_min_;
  double target_;
};

}  // namespace cpmetric
