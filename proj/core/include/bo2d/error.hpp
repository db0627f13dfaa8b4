#pragma once

#include <stdexcept>
#include <string>

namespace bo2d {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (odd grid size, modulus > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf found where finite data is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exhausted its budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Peak search found two separated maxima of equal height.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// Least-squares fit refused (non-monotone data, degenerate window).
class FitError : public Error {
 public:
  using Error::Error;
};

/// File or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bo2d
