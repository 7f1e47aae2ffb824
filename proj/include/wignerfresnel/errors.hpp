#pragma once

#include <stdexcept>
#include <string>

namespace wf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: violated preconditions, malformed specs, infeasible geometry.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Requested index lies outside the domain the construction covers.
class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A computation ran but could not meet its accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class TailMassError : public NumericalError {
 public:
  TailMassError(const std::string& what, double tail_mass)
      : NumericalError(what), tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

// Displacement matrix columns lose norm beyond the truncation tolerance.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, int worst_column, double leakage)
      : NumericalError(what), worst_column_(worst_column), leakage_(leakage) {}
  int worst_column() const noexcept { return worst_column_; }
  double leakage() const noexcept { return leakage_; }

 private:
  int worst_column_;
  double leakage_;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double where_u, double where_v,
                  double estimate)
      : NumericalError(what), u_(where_u), v_(where_v), estimate_(estimate) {}
  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }
  double estimate() const noexcept { return estimate_; }

 private:
  double u_;
  double v_;
  double estimate_;
};

class ContainmentError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace wf
