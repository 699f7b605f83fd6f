#pragma once

#include <stdexcept>
#include <string>

namespace period_atlas {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exactalg

/// An exact quotient was requested but the divisor does not divide.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A root-counting routine was handed an interval whose endpoint is a root.
class EndpointRoot : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

/// A budgeted computation ran past its deadline.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text/JSON. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// dynsys

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class NoBracket : public Error {
 public:
  using Error::Error;
};

class EscapedAnnulus : public Error {
 public:
  using Error::Error;
};

class MaxTimeExceeded : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class ZeroCoefficient : public Error {
 public:
  using Error::Error;
};

// certify

/// The monomial-wise upper bound was not negative on the target interval.
class BoundTooLoose : public Error {
 public:
  using Error::Error;
};

}  // namespace period_atlas
