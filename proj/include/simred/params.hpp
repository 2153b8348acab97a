#pragma once

#include <cmath>
#include <string>

#include "simred/errors.hpp"
#include "simred/rational.hpp"

namespace simred {

// The PDE instance u_t = (u^n)_xx + C/(x+lambda) (u^n)_x.
// n is kept as an exact rational; n = 0 and n = 1 are excluded.
struct PdeParams {
  Rational n{2};
  double C{0.0};
  double lambda{0.0};

  PdeParams() = default;
  PdeParams(Rational n_, double C_, double lambda_) : n(n_), C(C_), lambda(lambda_) {
    if (n == Rational(0) || n == Rational(1))
      raise(ErrorKind::ConfigError, "exponent n must avoid 0 and 1");
  }

  double n_val() const { return n.value(); }
  bool fractional_n() const { return !n.is_integer(); }

  // x + lambda, which every evaluation needs strictly positive.
  double shifted(double x) const {
    double w = x + lambda;
    if (w <= 0.0) raise(ErrorKind::DomainViolation, "x + lambda must be positive");
    return w;
  }

  // The coefficient value at which the point group gains a fourth generator.
  double extended_group_C() const {
    if (n == Rational(-1)) raise(ErrorKind::ConfigError, "extended group undefined at n = -1");
    return (3.0 * n_val() + 1.0) / (n_val() + 1.0);
  }
  bool has_extended_group(double tol = 1e-12) const {
    if (n == Rational(-1)) return false;
    return std::abs(C - extended_group_C()) <= tol * std::max(1.0, std::abs(C));
  }
};

inline bool approx_eq(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace simred
