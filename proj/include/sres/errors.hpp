#pragma once

#include <stdexcept>
#include <string>

namespace sres {

// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different algebras or on different grids.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed input data (nonpositive coefficient sample, bad expression, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis such as m_a^2 > C_S M_a' does not hold.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string hypothesis, const std::string& detail)
      : Error("hypothesis violated: " + hypothesis + " (" + detail + ")"),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

// A region-only quantity was requested at a point outside the region.
class OutsideRegion : public Error {
 public:
  using Error::Error;
};

// Linear solver failed to converge or hit a singular system.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, bool singular)
      : Error(what), residual_(residual), singular_(singular) {}

  double residual() const noexcept { return residual_; }
  bool singular() const noexcept { return singular_; }

 private:
  double residual_;
  bool singular_;
};

// Configuration file problems; maps to CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sres
