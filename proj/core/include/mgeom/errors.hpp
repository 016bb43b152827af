#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace mgeom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of the arguments do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition (non-finite entry, zero
// marginal, non-antisymmetric phase field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A fixed-point iteration ran out of iterations before reaching `tol`.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(describe(what, residual, iterations)),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  static std::string describe(const std::string& what, double residual, int iterations) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (residual %.3e after %d iterations)", residual, iterations);
    return what + buf;
  }

  double residual_;
  int iterations_;
};

}  // namespace mgeom
