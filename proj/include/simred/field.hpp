#pragma once

#include <functional>
#include <utility>

#include "simred/jet.hpp"
#include "simred/params.hpp"

namespace simred {

struct Region {
  double x0{0}, x1{1}, t0{0}, t1{1};

  bool contains(double x, double t, double pad = 0.0) const {
    return x >= x0 - pad && x <= x1 + pad && t >= t0 - pad && t <= t1 + pad;
  }
  bool contains(const Region& r) const {
    return r.x0 >= x0 - 1e-12 && r.x1 <= x1 + 1e-12 && r.t0 >= t0 - 1e-12 && r.t1 <= t1 + 1e-12;
  }
};

// An evaluable u(x,t) -> Jet2 over a rectangular domain.  Evaluation outside
// the domain (or where x + lambda <= 0) is a DomainViolation.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Region domain, double lambda, std::function<Jet2(double, double)> f)
      : domain_(domain), lambda_(lambda), f_(std::move(f)) {
    if (domain_.x0 + lambda_ <= 0.0)
      raise(ErrorKind::DomainViolation, "field domain must satisfy x0 + lambda > 0");
  }

  Jet2 operator()(double x, double t) const {
    if (!f_) raise(ErrorKind::ConfigError, "empty field");
    if (!domain_.contains(x, t, 1e-12))
      raise(ErrorKind::DomainViolation, "field evaluated outside its domain");
    if (x + lambda_ <= 0.0) raise(ErrorKind::DomainViolation, "x + lambda must be positive");
    return f_(x, t);
  }

  const Region& domain() const { return domain_; }
  double lambda() const { return lambda_; }

 private:
  Region domain_{};
  double lambda_{0};
  std::function<Jet2(double, double)> f_;
};

inline ScalarField constant_field(double c, Region domain, double lambda = 0.0) {
  return ScalarField(domain, lambda, [c](double, double) { return jet_const(c); });
}

inline ScalarField make_field(Region domain, double lambda, std::function<Jet2(double, double)> f) {
  return ScalarField(domain, lambda, std::move(f));
}

}  // namespace simred
