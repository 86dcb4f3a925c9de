#pragma once

#include <stdexcept>
#include <string>

namespace philap {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the open interval an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested level lies beyond the supremum of a monotone branch.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A solvability inequality does not hold; the message names the bound.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Family or capability (e.g. a derivative) not available for an operation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double err_estimate)
      : Error(what), err_estimate_(err_estimate) {}
  double err_estimate() const noexcept { return err_estimate_; }

 private:
  double err_estimate_;
};

/// No sign change of the residual over the supplied bracket.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, double f_lo, double f_hi)
      : Error(what), f_lo_(f_lo), f_hi_(f_hi) {}
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double f_lo_;
  double f_hi_;
};

/// The fixed-step oracle left the open phase-space rectangle.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A post-hoc consistency check failed. Signals a numerics bug, not bad input.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace philap
