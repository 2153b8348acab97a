#pragma once

#include <cmath>

#include "simred/errors.hpp"
#include "simred/rational.hpp"

namespace simred {

// Truncated Taylor scalar for a field u(x,t): carries the value together
// with u_x, u_xx and u_t, which is exactly the derivative set the residual
// operators consume.  Arithmetic propagates these by the product/chain
// rules, e.g. (a*b).vxx = a.vxx*b.v + 2*a.vx*b.vx + a.v*b.vxx.
struct Jet2 {
  double v{0}, vx{0}, vxx{0}, vt{0};

  Jet2() = default;
  Jet2(double v_, double vx_, double vxx_, double vt_) : v(v_), vx(vx_), vxx(vxx_), vt(vt_) {}

  Jet2 operator-() const { return {-v, -vx, -vxx, -vt}; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v; vx += o.vx; vxx += o.vxx; vt += o.vt;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v; vx -= o.vx; vxx -= o.vxx; vt -= o.vt;
    return *this;
  }
};

inline Jet2 jet_const(double c) { return {c, 0, 0, 0}; }
inline Jet2 jet_x(double x) { return {x, 1, 0, 0}; }
inline Jet2 jet_t(double t) { return {t, 0, 0, 1}; }

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator+(Jet2 a, double c) { a.v += c; return a; }
inline Jet2 operator+(double c, Jet2 a) { a.v += c; return a; }
inline Jet2 operator-(Jet2 a, double c) { a.v -= c; return a; }
inline Jet2 operator-(double c, const Jet2& a) { return jet_const(c) - a; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.vx * b.v + a.v * b.vx,
          a.vxx * b.v + 2.0 * a.vx * b.vx + a.v * b.vxx,
          a.vt * b.v + a.v * b.vt};
}
inline Jet2 operator*(Jet2 a, double c) {
  a.v *= c; a.vx *= c; a.vxx *= c; a.vt *= c;
  return a;
}
inline Jet2 operator*(double c, Jet2 a) { return a * c; }

// f applied through the chain rule; f0,f1,f2 are f(v), f'(v), f''(v).
inline Jet2 jet_chain(const Jet2& a, double f0, double f1, double f2) {
  return {f0, f1 * a.vx, f2 * a.vx * a.vx + f1 * a.vxx, f1 * a.vt};
}

inline Jet2 inv(const Jet2& a) {
  if (a.v == 0.0) raise(ErrorKind::DomainViolation, "division by zero jet");
  double iv = 1.0 / a.v;
  return jet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator/(Jet2 a, double c) { return a * (1.0 / c); }
inline Jet2 operator/(double c, const Jet2& b) { return inv(b) * c; }

inline Jet2 exp(const Jet2& a) {
  double e = std::exp(a.v);
  return jet_chain(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
  if (a.v <= 0.0) raise(ErrorKind::DomainViolation, "log of non-positive jet");
  double iv = 1.0 / a.v;
  return jet_chain(a, std::log(a.v), iv, -iv * iv);
}
inline Jet2 sqrt(const Jet2& a) {
  if (a.v <= 0.0) raise(ErrorKind::DomainViolation, "sqrt of non-positive jet");
  double s = std::sqrt(a.v);
  return jet_chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 tanh(const Jet2& a) {
  double th = std::tanh(a.v);
  double sech2 = 1.0 - th * th;
  return jet_chain(a, th, sech2, -2.0 * th * sech2);
}
inline Jet2 tan(const Jet2& a) {
  double tn = std::tan(a.v);
  double sec2 = 1.0 + tn * tn;
  return jet_chain(a, tn, sec2, 2.0 * tn * sec2);
}

inline Jet2 powi(const Jet2& a, long long e) {
  if (e < 0) return inv(powi(a, -e));
  Jet2 r = jet_const(1.0);
  Jet2 b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline Jet2 pow(const Jet2& a, double e) {
  if (a.v <= 0.0) raise(ErrorKind::NonPositiveU, "fractional power of non-positive jet");
  double f0 = std::pow(a.v, e);
  double f1 = e * f0 / a.v;
  double f2 = (e - 1.0) * f1 / a.v;
  return jet_chain(a, f0, f1, f2);
}

inline Jet2 pow(const Jet2& a, const Rational& r) {
  if (r.is_integer()) {
    if (r.num < 0 && a.v == 0.0) raise(ErrorKind::NonPositiveU, "zero jet with negative power");
    return powi(a, r.num);
  }
  return pow(a, r.value());
}

// ---------------------------------------------------------------------------
// One-dimensional curve jet (f, f', f'') for similarity profiles h(z) and
// profile transforms such as h = y^{1/n}.

struct CJet {
  double f{0}, d1{0}, d2{0};

  CJet() = default;
  CJet(double f_, double d1_, double d2_) : f(f_), d1(d1_), d2(d2_) {}
  CJet operator-() const { return {-f, -d1, -d2}; }
};

inline CJet cjet_var(double z) { return {z, 1, 0}; }
inline CJet cjet_const(double c) { return {c, 0, 0}; }

inline CJet operator+(const CJet& a, const CJet& b) { return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2}; }
inline CJet operator-(const CJet& a, const CJet& b) { return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2}; }
inline CJet operator+(CJet a, double c) { a.f += c; return a; }
inline CJet operator+(double c, CJet a) { a.f += c; return a; }
inline CJet operator-(CJet a, double c) { a.f -= c; return a; }
inline CJet operator-(double c, const CJet& a) { return cjet_const(c) - a; }
inline CJet operator*(const CJet& a, const CJet& b) {
  return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}
inline CJet operator*(CJet a, double c) { return {a.f * c, a.d1 * c, a.d2 * c}; }
inline CJet operator*(double c, CJet a) { return a * c; }

inline CJet cjet_chain(const CJet& a, double f0, double f1, double f2) {
  return {f0, f1 * a.d1, f2 * a.d1 * a.d1 + f1 * a.d2};
}
inline CJet inv(const CJet& a) {
  if (a.f == 0.0) raise(ErrorKind::DomainViolation, "division by zero curve jet");
  double iv = 1.0 / a.f;
  return cjet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline CJet operator/(const CJet& a, const CJet& b) { return a * inv(b); }
inline CJet operator/(CJet a, double c) { return a * (1.0 / c); }
inline CJet operator/(double c, const CJet& b) { return inv(b) * c; }
inline CJet exp(const CJet& a) {
  double e = std::exp(a.f);
  return cjet_chain(a, e, e, e);
}
inline CJet log(const CJet& a) {
  if (a.f <= 0.0) raise(ErrorKind::DomainViolation, "log of non-positive curve jet");
  double iv = 1.0 / a.f;
  return cjet_chain(a, std::log(a.f), iv, -iv * iv);
}
inline CJet sqrt(const CJet& a) {
  if (a.f <= 0.0) raise(ErrorKind::DomainViolation, "sqrt of non-positive curve jet");
  double s = std::sqrt(a.f);
  return cjet_chain(a, s, 0.5 / s, -0.25 / (s * a.f));
}
inline CJet tanh(const CJet& a) {
  double th = std::tanh(a.f);
  double sech2 = 1.0 - th * th;
  return cjet_chain(a, th, sech2, -2.0 * th * sech2);
}
inline CJet tan(const CJet& a) {
  double tn = std::tan(a.f);
  double sec2 = 1.0 + tn * tn;
  return cjet_chain(a, tn, sec2, 2.0 * tn * sec2);
}
inline CJet powi(const CJet& a, long long e) {
  if (e < 0) return inv(powi(a, -e));
  CJet r = cjet_const(1.0);
  CJet b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}
inline CJet pow(const CJet& a, double e) {
  if (a.f <= 0.0) raise(ErrorKind::NonPositiveU, "fractional power of non-positive curve jet");
  double f0 = std::pow(a.f, e);
  double f1 = e * f0 / a.f;
  double f2 = (e - 1.0) * f1 / a.f;
  return cjet_chain(a, f0, f1, f2);
}
inline CJet pow(const CJet& a, const Rational& r) {
  if (r.is_integer()) return powi(a, r.num);
  return pow(a, r.value());
}

// Composition u(x,t) = H(z(x,t)) for a profile H known as a curve jet at
// z = Z.v.  Transport: u_x = H'z_x, u_xx = H''z_x^2 + H'z_xx, u_t = H'z_t.
inline Jet2 compose(const CJet& h, const Jet2& z) {
  return {h.f, h.d1 * z.vx, h.d2 * z.vx * z.vx + h.d1 * z.vxx, h.d1 * z.vt};
}

// Composition through a reparameterization of x alone: given the jet of u
// in (x,t) and the jet of x as a function of X (carried in .v/.vx/.vxx of
// `x_of_X`), returns the jet of u(x(X), t) in (X,t).
inline Jet2 compose_x(const Jet2& u, const Jet2& x_of_X) {
  return {u.v,
          u.vx * x_of_X.vx,
          u.vxx * x_of_X.vx * x_of_X.vx + u.vx * x_of_X.vxx,
          u.vt};
}

// ---------------------------------------------------------------------------
// Jet in (x, u, t) for infinitesimals p(x,t,u), r(x,t,u): carries value,
// first derivatives in x/u/t and the second derivatives xx, xu, uu that the
// determining equations consume.

struct XUJet {
  double v{0}, dx{0}, du{0}, dt{0}, dxx{0}, dxu{0}, duu{0};

  XUJet() = default;
  XUJet(double v_, double dx_, double du_, double dt_, double dxx_, double dxu_, double duu_)
      : v(v_), dx(dx_), du(du_), dt(dt_), dxx(dxx_), dxu(dxu_), duu(duu_) {}
  XUJet operator-() const { return {-v, -dx, -du, -dt, -dxx, -dxu, -duu}; }
};

inline XUJet xu_const(double c) { return {c, 0, 0, 0, 0, 0, 0}; }
inline XUJet xu_x(double x) { return {x, 1, 0, 0, 0, 0, 0}; }
inline XUJet xu_u(double u) { return {u, 0, 1, 0, 0, 0, 0}; }
inline XUJet xu_t(double t) { return {t, 0, 0, 1, 0, 0, 0}; }

inline XUJet operator+(const XUJet& a, const XUJet& b) {
  return {a.v + b.v, a.dx + b.dx, a.du + b.du, a.dt + b.dt, a.dxx + b.dxx, a.dxu + b.dxu, a.duu + b.duu};
}
inline XUJet operator-(const XUJet& a, const XUJet& b) { return a + (-b); }
inline XUJet operator+(XUJet a, double c) { a.v += c; return a; }
inline XUJet operator+(double c, XUJet a) { a.v += c; return a; }
inline XUJet operator-(XUJet a, double c) { a.v -= c; return a; }
inline XUJet operator-(double c, const XUJet& a) { return xu_const(c) - a; }

inline XUJet operator*(const XUJet& a, const XUJet& b) {
  return {a.v * b.v,
          a.dx * b.v + a.v * b.dx,
          a.du * b.v + a.v * b.du,
          a.dt * b.v + a.v * b.dt,
          a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx,
          a.dxu * b.v + a.dx * b.du + a.du * b.dx + a.v * b.dxu,
          a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu};
}
inline XUJet operator*(XUJet a, double c) {
  return {a.v * c, a.dx * c, a.du * c, a.dt * c, a.dxx * c, a.dxu * c, a.duu * c};
}
inline XUJet operator*(double c, const XUJet& a) { return a * c; }

inline XUJet xu_chain(const XUJet& a, double f0, double f1, double f2) {
  return {f0,
          f1 * a.dx,
          f1 * a.du,
          f1 * a.dt,
          f2 * a.dx * a.dx + f1 * a.dxx,
          f2 * a.dx * a.du + f1 * a.dxu,
          f2 * a.du * a.du + f1 * a.duu};
}
inline XUJet inv(const XUJet& a) {
  if (a.v == 0.0) raise(ErrorKind::DomainViolation, "division by zero xu-jet");
  double iv = 1.0 / a.v;
  return xu_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline XUJet operator/(const XUJet& a, const XUJet& b) { return a * inv(b); }
inline XUJet operator/(XUJet a, double c) { return a * (1.0 / c); }
inline XUJet operator/(double c, const XUJet& b) { return inv(b) * c; }
inline XUJet sqrt(const XUJet& a) {
  if (a.v <= 0.0) raise(ErrorKind::NonPositiveU, "sqrt of non-positive xu-jet");
  double s = std::sqrt(a.v);
  return xu_chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline XUJet powi(const XUJet& a, long long e) {
  if (e < 0) return inv(powi(a, -e));
  XUJet r = xu_const(1.0);
  XUJet b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}
inline XUJet pow(const XUJet& a, double e) {
  if (a.v <= 0.0) raise(ErrorKind::NonPositiveU, "fractional power of non-positive xu-jet");
  double f0 = std::pow(a.v, e);
  double f1 = e * f0 / a.v;
  double f2 = (e - 1.0) * f1 / a.v;
  return xu_chain(a, f0, f1, f2);
}

}  // namespace simred
