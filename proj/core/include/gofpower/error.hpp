#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gofpower {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bin count out of range or mismatched between a model and a perturbation.
class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

/// Probabilities or perturbation entries violate their invariants.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Malformed builder string or model file. `field` names the offending key
/// or token when one can be identified.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class EigensolverError : public Error {
 public:
  EigensolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An eigenvalue that should be nonzero collapsed below the relative
/// threshold; carries max p / min p of the offending model.
class DegenerateModelError : public Error {
 public:
  DegenerateModelError(const std::string& what, double condition_ratio)
      : Error(what), condition_ratio_(condition_ratio) {}
  double condition_ratio() const noexcept { return condition_ratio_; }

 private:
  double condition_ratio_;
};

/// Non-finite integrand value during quadrature.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double y) : Error(what), y_(y) {}
  double y() const noexcept { return y_; }

 private:
  double y_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace gofpower
