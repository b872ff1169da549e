#pragma once

#include <stdexcept>
#include <string>

namespace spinprobe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside its mathematical domain (negative width, theta out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix shape does not match the basis / chain it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Site or bond index out of range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Problem size above a hard guard (dense oracle, full-space product states, L cap).
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// Requested magnetization sector has no states.
class EmptySectorError : public Error {
 public:
  using Error::Error;
};

/// Input state is not normalized.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// A formula's physical precondition (zero magnetization, transverse data, ...) is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Lanczos failed to reach the requested residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace spinprobe
