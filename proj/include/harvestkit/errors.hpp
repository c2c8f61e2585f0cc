#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace harvestkit {

/// Input outside the physical or numerical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, std::complex<double> best_estimate,
                   double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  std::complex<double> best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

private:
  std::complex<double> best_estimate_;
  double error_estimate_;
};

/// Second-order elements too large for the perturbative reduced state.
class PerturbativityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation requires L_aa == L_bb.
class IdenticalDetectorError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace harvestkit
