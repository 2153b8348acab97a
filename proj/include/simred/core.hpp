#pragma once

#include <cmath>

#include "simred/field.hpp"
#include "simred/jet.hpp"
#include "simred/params.hpp"

namespace simred {

namespace detail {

// u^e for the nonlinearity, with the positivity policy: fractional exponents
// need u > 0, negative integer exponents need u != 0.
inline double u_pow(const PdeParams& p, double u, const Rational& e) {
  if (!e.is_integer() && u <= 0.0)
    raise(ErrorKind::NonPositiveU, "u must be positive for fractional n");
  if (e.is_integer() && e.num < 0 && u == 0.0)
    raise(ErrorKind::NonPositiveU, "u must be nonzero for negative n");
  (void)p;
  return r_pow(u, e);
}

}  // namespace detail

// (u^n)_x = n u^{n-1} u_x evaluated from a jet.
inline double un_x(const PdeParams& p, const Jet2& u) {
  double nv = p.n_val();
  return nv * detail::u_pow(p, u.v, p.n - Rational(1)) * u.vx;
}

// (u^n)_xx = n(n-1) u^{n-2} u_x^2 + n u^{n-1} u_xx.
inline double un_xx(const PdeParams& p, const Jet2& u) {
  double nv = p.n_val();
  double um1 = detail::u_pow(p, u.v, p.n - Rational(1));
  double um2 = detail::u_pow(p, u.v, p.n - Rational(2));
  return nv * (nv - 1.0) * um2 * u.vx * u.vx + nv * um1 * u.vxx;
}

// Residual of u_t = (u^n)_xx + C/(x+lambda) (u^n)_x, written as
// u_t - (u^n)_xx - C/(x+lambda)(u^n)_x; zero (up to rounding) on solutions.
inline double pde_residual(const PdeParams& p, double x, const Jet2& u) {
  double w = p.shifted(x);
  return u.vt - un_xx(p, u) - (p.C / w) * un_x(p, u);
}

// Conserved-form densities: G = (x+lambda) u,
// F = (x+lambda)(u^n)_x + (C-1) u^n.
inline double flux_G(const PdeParams& p, double x, const Jet2& u) {
  return p.shifted(x) * u.v;
}
inline double flux_F(const PdeParams& p, double x, const Jet2& u) {
  double w = p.shifted(x);
  return w * un_x(p, u) + (p.C - 1.0) * detail::u_pow(p, u.v, p.n);
}

// D_x F - D_t G from the jet; for any smooth field this equals
// -(x+lambda) * pde_residual (an identity, not only on solutions).
inline double conservation_residual(const PdeParams& p, double x, const Jet2& u) {
  double w = p.shifted(x);
  double DxF = w * un_xx(p, u) + p.C * un_x(p, u);
  double DtG = w * u.vt;
  return DxF - DtG;
}

inline double conservation_residual(const PdeParams& p, const ScalarField& f, double x, double t) {
  return conservation_residual(p, x, f(x, t));
}

struct GridMax {
  double max_abs{0};
  double arg_x{0}, arg_t{0};
};

// Max |pde_residual| over an nx-by-nt tensor grid of `region`.
inline GridMax max_abs_residual_on_grid(const PdeParams& p, const ScalarField& f,
                                        const Region& region, int nx, int nt) {
  if (nx < 2 || nt < 2) raise(ErrorKind::ConfigError, "grid needs nx, nt >= 2");
  GridMax m;
  m.arg_x = region.x0;
  m.arg_t = region.t0;
  for (int i = 0; i < nx; ++i) {
    double x = region.x0 + (region.x1 - region.x0) * i / (nx - 1);
    for (int j = 0; j < nt; ++j) {
      double t = region.t0 + (region.t1 - region.t0) * j / (nt - 1);
      double r = std::abs(pde_residual(p, x, f(x, t)));
      if (r > m.max_abs) {
        m.max_abs = r;
        m.arg_x = x;
        m.arg_t = t;
      }
    }
  }
  return m;
}

}  // namespace simred
