#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "simred/jet.hpp"
#include "simred/rng.hpp"

using namespace simred;

namespace {

// Reference jets for f(x,t) assembled from hand derivatives.
Jet2 hand_jet(double v, double vx, double vxx, double vt) { return {v, vx, vxx, vt}; }

// Central finite differences of a scalar map, used as the independent check
// on jet transport.
struct FdDerivs {
  double vx, vxx, vt;
};
FdDerivs fd(const std::function<double(double, double)>& f, double x, double t, double h = 1e-4) {
  FdDerivs d;
  d.vx = (f(x + h, t) - f(x - h, t)) / (2 * h);
  d.vxx = (f(x + h, t) - 2 * f(x, t) + f(x - h, t)) / (h * h);
  d.vt = (f(x, t + h) - f(x, t - h)) / (2 * h);
  return d;
}

}  // namespace

TEST_CASE("product rule matches the stated truncated Taylor identity") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    Jet2 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Jet2 b{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Jet2 ab = a * b;
    CHECK(ab.vxx == doctest::Approx(a.vxx * b.v + 2 * a.vx * b.vx + a.v * b.vxx).epsilon(1e-14));
    CHECK(ab.vx == doctest::Approx(a.vx * b.v + a.v * b.vx).epsilon(1e-14));
    CHECK(ab.vt == doctest::Approx(a.vt * b.v + a.v * b.vt).epsilon(1e-14));
  }
}

TEST_CASE("jet evaluation of closed forms matches hand derivatives") {
  // u = x^2 t at (x,t) = (1.5, 2): u = 4.5, u_x = 2xt = 6, u_xx = 2t = 4, u_t = x^2 = 2.25
  Jet2 u = powi(jet_x(1.5), 2) * jet_t(2.0);
  Jet2 ref = hand_jet(4.5, 6.0, 4.0, 2.25);
  CHECK(u.v == doctest::Approx(ref.v));
  CHECK(u.vx == doctest::Approx(ref.vx));
  CHECK(u.vxx == doctest::Approx(ref.vxx));
  CHECK(u.vt == doctest::Approx(ref.vt));
}

TEST_CASE("jet derivatives of random smooth closed forms track finite differences") {
  SplitMix64 rng(77);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    double a = rng.uniform(0.3, 1.5), b = rng.uniform(0.2, 0.9), c = rng.uniform(0.1, 0.8);
    auto val = [&](double x, double t) {
      return std::exp(b * std::tanh(x * t)) + a / (x + 2.0) + std::sqrt(c + x) * std::log(1.0 + t * t + x);
    };
    auto jet = [&](double x, double t) {
      Jet2 X = jet_x(x), T = jet_t(t);
      return exp(b * tanh(X * T)) + a / (X + 2.0) + sqrt(c + X) * log(1.0 + T * T + X);
    };
    double x = rng.uniform(0.5, 2.0), t = rng.uniform(0.5, 2.0);
    Jet2 J = jet(x, t);
    FdDerivs D = fd(val, x, t);
    CHECK(std::abs(J.vx - D.vx) <= 1e-6);
    CHECK(std::abs(J.vxx - D.vxx) <= 1e-6);
    CHECK(std::abs(J.vt - D.vt) <= 1e-6);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("pow guards") {
  CHECK_THROWS_AS((void)pow(jet_const(-1.0), 0.5), Error);
  CHECK_THROWS_AS((void)pow(jet_const(0.0), Rational(1, 2)), Error);
  CHECK_THROWS_AS((void)log(jet_const(0.0)), Error);
  CHECK_THROWS_AS((void)sqrt(jet_const(-2.0)), Error);
  // Integer powers of negative bases are fine.
  Jet2 p = powi(jet_const(-2.0) + 0.0, 3);
  CHECK(p.v == doctest::Approx(-8.0));
}

TEST_CASE("rational powers use exact integer paths") {
  Jet2 x = jet_x(3.0);
  Jet2 a = pow(x, Rational(-1));
  CHECK(a.v == doctest::Approx(1.0 / 3.0));
  CHECK(a.vx == doctest::Approx(-1.0 / 9.0));
  Jet2 b = pow(x, Rational(1, 2));
  CHECK(b.v == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("curve jet matches closed-form derivatives") {
  double z = 0.7;
  CJet h = tanh(cjet_var(z) * 2.0);
  double th = std::tanh(2 * z);
  CHECK(h.f == doctest::Approx(th));
  CHECK(h.d1 == doctest::Approx(2 * (1 - th * th)));
  CHECK(h.d2 == doctest::Approx(-8 * th * (1 - th * th)));
}

TEST_CASE("compose transports profile jets through the similarity variable") {
  // u(x,t) = H(z), z = x^2/t, H = tanh. Check against direct jet evaluation.
  double x = 1.3, t = 2.1;
  Jet2 Z = powi(jet_x(x), 2) / jet_t(t);
  CJet H = tanh(cjet_var(Z.v));
  Jet2 u = compose(H, Z);
  Jet2 ref = tanh(powi(jet_x(x), 2) / jet_t(t));
  CHECK(u.v == doctest::Approx(ref.v).epsilon(1e-14));
  CHECK(u.vx == doctest::Approx(ref.vx).epsilon(1e-14));
  CHECK(u.vxx == doctest::Approx(ref.vxx).epsilon(1e-14));
  CHECK(u.vt == doctest::Approx(ref.vt).epsilon(1e-14));
}

TEST_CASE("xu-jet second derivatives match hand calculation") {
  // r(x,u) = 2 sqrt(u) / x^2 at (x,u) = (2, 4):
  //   r = 1/2 * 2/4 -> 2*2/4 = 1; r_u = 1/(sqrt(u) x^2) = 1/8; r_uu = -1/(2 u^{3/2} x^2) = -1/64
  //   r_x = -4 sqrt(u)/x^3 = -1; r_xx = 12 sqrt(u)/x^4 = 3/2; r_xu = -2/(sqrt(u) x^3) = -1/8
  XUJet X = xu_x(2.0), U = xu_u(4.0);
  XUJet r = 2.0 * sqrt(U) / (X * X);
  CHECK(r.v == doctest::Approx(1.0));
  CHECK(r.du == doctest::Approx(1.0 / 8.0));
  CHECK(r.duu == doctest::Approx(-1.0 / 64.0));
  CHECK(r.dx == doctest::Approx(-1.0));
  CHECK(r.dxx == doctest::Approx(1.5));
  CHECK(r.dxu == doctest::Approx(-1.0 / 8.0));
  CHECK(r.dt == doctest::Approx(0.0));
}
