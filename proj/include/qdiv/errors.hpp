#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qdiv {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: dimension mismatch, non-Hermitian or indefinite matrix,
/// parameter out of range, malformed file.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A scalar function was evaluated outside its domain, or an extended-real
/// operation has no defined value (0 * inf).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The operator convex function lacks what the routine needs, e.g. a finite
/// slope at infinity.
class UnsupportedFunctionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A positive definite argument was required but a singular one was given.
class SingularOperatorError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// The Eigen backend reported failure.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// A limit procedure did not settle within its step budget. Carries the
/// sequence of iterates so the caller can inspect the trend.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, std::vector<double> iterates)
        : Error(what), iterates_(std::move(iterates)) {}

    const std::vector<double>& iterates() const noexcept { return iterates_; }

  private:
    std::vector<double> iterates_;
};

} // namespace qdiv
