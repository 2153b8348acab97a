#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "simred/errors.hpp"

namespace simred {

// Exact rational used for the diffusion exponent n and derived constraint
// arithmetic such as C = (3n+1)/(n+1).
struct Rational {
  long long num{0};
  long long den{1};

  constexpr Rational() = default;
  constexpr Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) raise(ErrorKind::ConfigError, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  long long integer() const { return num; }

  Rational operator-() const { return Rational(-num, den); }
  friend Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rational operator-(Rational a, Rational b) { return Rational(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) raise(ErrorKind::ConfigError, "rational division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s), 1);
      long long p = std::stoll(s.substr(0, slash));
      long long q = std::stoll(s.substr(slash + 1));
      return Rational(p, q);
    } catch (const std::logic_error&) {
      raise(ErrorKind::ConfigError, "cannot parse rational '" + s + "'");
    }
  }
};

inline double powi(double base, long long e) {
  if (e < 0) return 1.0 / powi(base, -e);
  double r = 1.0, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// base^r with an integer fast path and a half-integer fast path; fractional
// exponents require base > 0.
inline double r_pow(double base, const Rational& r) {
  if (r.is_integer()) {
    if (r.num < 0 && base == 0.0) raise(ErrorKind::NonPositiveU, "zero base with negative exponent");
    return powi(base, r.num);
  }
  if (base <= 0.0) raise(ErrorKind::NonPositiveU, "fractional power of non-positive base");
  if (r.den == 2) return powi(std::sqrt(base), r.num);
  return std::pow(base, r.value());
}

}  // namespace simred
