#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace maass {

using cplx = std::complex<double>;

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result not representable in double precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Iterative method did not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, cplx best, double err_est)
      : std::runtime_error(what), best_(best), err_est_(err_est) {}
  cplx best_estimate() const { return best_; }
  double error_estimate() const { return err_est_; }

 private:
  cplx best_;
  double err_est_;
};

// Stored coefficients do not reach far enough to certify a truncation.
class InsufficientDataError : public std::runtime_error {
 public:
  InsufficientDataError(const std::string& what, long required_n_max)
      : std::runtime_error(what), required_(required_n_max) {}
  long required_n_max() const { return required_; }

 private:
  long required_;
};

// Test function not in the convergence domain F_f of a form.
class MembershipError : public DomainError {
 public:
  MembershipError(const std::string& what, std::string side)
      : DomainError(what), side_(std::move(side)) {}
  const std::string& side() const { return side_; }

 private:
  std::string side_;
};

// Malformed user input (files, flags).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace maass
