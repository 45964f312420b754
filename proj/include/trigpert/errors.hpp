#pragma once

#include <stdexcept>
#include <string>

namespace trigpert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong lengths, non-finite data, out-of-range indices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside the mathematical domain (alpha >= 1/2, b <= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds the supported problem size.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A user-provided payload violates an invariant (explicit shifts out of range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The linear system is singular to working precision. For interpolation this
/// means coalesced nodes, which cannot happen on an admissible grid.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration ran out of budget; the best estimate is kept.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  [[nodiscard]] double best_estimate() const noexcept { return best_estimate_; }
  [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// A library invariant failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace trigpert
