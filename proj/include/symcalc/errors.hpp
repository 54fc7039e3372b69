#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symcalc {

/// Base class for all symcalc errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error in an expression source string.
/// Message format is stable: "syntax error at byte N: <detail>".
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string detail)
      : Error("syntax error at byte " + std::to_string(offset) + ": " + detail),
        offset_(offset),
        detail_(std::move(detail)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

/// Base class for expression evaluation failures.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A parameter name was referenced but not bound to a value.
class UnboundParameter : public EvalError {
 public:
  explicit UnboundParameter(const std::string& name)
      : EvalError("unbound parameter '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation hit a point outside the mathematical domain of an operation
/// (division by zero, log of a non-positive number, ...).  Carries the text
/// of the offending sub-expression.
class DomainError : public EvalError {
 public:
  DomainError(std::string subexpr, double at)
      : EvalError("domain error in '" + subexpr + "' at t=" + std::to_string(at)),
        subexpr_(std::move(subexpr)),
        at_(at) {}

  const std::string& subexpr() const noexcept { return subexpr_; }
  double at() const noexcept { return at_; }

 private:
  std::string subexpr_;
  double at_;
};

/// Invalid step parameters, summation policy or search configuration.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// The interval measure is too small for the requested steps
/// (|I| <= max{alpha, beta}).
class MeasureTooSmall : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the set on which a difference operator is defined,
/// or outside the domain of a function.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// A theorem's hypothesis does not hold for the given inputs.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A witness search could not complete (invalid bisection bracket,
/// step shrinking exhausted, residual target unreachable).
class SearchFailed : public Error {
 public:
  using Error::Error;
};

/// All sampled values of a function agree within tolerance; there is no
/// interior extremum to locate.
class ConstantFunction : public Error {
 public:
  using Error::Error;
};

}  // namespace symcalc
