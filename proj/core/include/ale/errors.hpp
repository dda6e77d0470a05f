#pragma once

#include <stdexcept>
#include <string>

namespace ale {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a profile or operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The radial metric degenerates: f' <= 0 or f' + t f'' <= 0.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, double t);
  double offending_t() const noexcept { return t_; }

 private:
  double t_;
};

/// Adaptive quadrature stopped before meeting its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double value, double error_estimate);
  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// A limit over an R schedule did not settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Least-squares design matrix is rank deficient.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent vector lengths or matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The linearized balancing step has no admissible solution.
class BalancingError : public Error {
 public:
  enum class Reason { RankDeficient, OutsideChart, Residual };
  BalancingError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Ill-formed scenario document; `path()` is a JSON pointer to the field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace ale
