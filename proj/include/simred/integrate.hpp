#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <functional>
#include <vector>

#include "simred/errors.hpp"

namespace simred {

// Embedded Dormand-Prince 5(4) pair with PI step-size control and a
// fourth-order dense-output interpolant built from the stage values.

struct IntegStats {
  long long naccepted{0};
  long long nrejected{0};
  long long nfev{0};
};

struct Dopri5Options {
  double h0{0};           // 0 -> automatic
  double safety{0.9};
  double facmin{0.2};
  double facmax{5.0};
  double beta{0.04};      // PI stabilization
  long long max_steps{4'000'000};
  double min_step_ratio{1e-6};  // |h| below this fraction of the span is a failure
};

namespace detail {

struct Dopri5Table {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0;
  static constexpr double d3 = 87487479700.0 / 32700410799.0;
  static constexpr double d4 = -10690763975.0 / 1880347072.0;
  static constexpr double d5 = 701980252875.0 / 199316789632.0;
  static constexpr double d6 = -1453857185.0 / 822651844.0;
  static constexpr double d7 = 69997945.0 / 29380423.0;
};

}  // namespace detail

// Dense coefficients for one accepted step; component i interpolates as
//   y_i(th) = rc[i][0] + th*(rc[i][1] + (1-th)*(rc[i][2] + th*(rc[i][3] + (1-th)*rc[i][4])))
struct DenseBlock {
  double t0{0}, h{0};
  std::vector<std::array<double, 5>> rc;
};

inline double dense_eval_component(const DenseBlock& b, std::size_t i, double t) {
  double th = (t - b.t0) / b.h;
  double th1 = 1.0 - th;
  const auto& r = b.rc[i];
  return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

// Integrates y' = rhs(t, y) from t0 to t1 in place.  `nodes`/`states`/`dense`
// may be null; when given they receive the accepted mesh and the dense blocks.
// `on_accept` runs after every accepted step (state guards live there).
template <class State, class RHS>
IntegStats dopri5(RHS&& rhs, double t0, State& y, double t1, double tol,
                  const Dopri5Options& opts = {},
                  std::vector<double>* nodes = nullptr,
                  std::vector<std::type_identity_t<State>>* states = nullptr,
                  std::vector<DenseBlock>* dense = nullptr,
                  const std::function<void(double, const std::type_identity_t<State>&)>& on_accept = {}) {
  using T = detail::Dopri5Table;
  IntegStats stats;
  const std::size_t N = y.size();
  const double span = t1 - t0;
  if (nodes) nodes->push_back(t0);
  if (states) states->push_back(y);
  if (span == 0.0) return stats;
  const double dir = span > 0 ? 1.0 : -1.0;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y, ynew = y;

  auto scale = [&](std::size_t i, const State& a, const State& b) {
    return tol + tol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  rhs(t0, y, k1);
  ++stats.nfev;

  // Initial step from the magnitude of y and y'.
  double h;
  if (opts.h0 != 0.0) {
    h = dir * std::min(std::abs(opts.h0), std::abs(span));
  } else {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double sc = scale(i, y, y);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double hg = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 * std::abs(span) : 0.01 * d0 / d1;
    h = dir * std::min(hg, std::abs(span) / 10.0);
  }

  double err_old = 1e-4;
  double t = t0;
  bool last_rejected = false;

  while (dir * (t1 - t) > 0) {
    if (stats.naccepted + stats.nrejected > opts.max_steps)
      raise(ErrorKind::StepFailure, "step budget exhausted");
    if (std::abs(h) < opts.min_step_ratio * std::abs(span))
      raise(ErrorKind::StepFailure, "step size collapsed");
    if (dir * (t + h - t1) > 0) h = t1 - t;

    auto stage = [&](State& k, double c, auto&&... terms) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = y[i];
        ((acc += h * terms.first * (terms.second)[i]), ...);
        ytmp[i] = acc;
      }
      rhs(t + c * h, ytmp, k);
      ++stats.nfev;
    };
    using P = std::pair<double, const State&>;
    stage(k2, T::c2, P{T::a21, k1});
    stage(k3, T::c3, P{T::a31, k1}, P{T::a32, k2});
    stage(k4, T::c4, P{T::a41, k1}, P{T::a42, k2}, P{T::a43, k3});
    stage(k5, T::c5, P{T::a51, k1}, P{T::a52, k2}, P{T::a53, k3}, P{T::a54, k4});
    stage(k6, 1.0, P{T::a61, k1}, P{T::a62, k2}, P{T::a63, k3}, P{T::a64, k4}, P{T::a65, k5});
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (T::a71 * k1[i] + T::a73 * k3[i] + T::a74 * k4[i] + T::a75 * k5[i] +
                            T::a76 * k6[i]);
    rhs(t + h, ynew, k7);
    ++stats.nfev;

    double err = 0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      double E = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                      T::e6 * k6[i] + T::e7 * k7[i]);
      if (!std::isfinite(E) || !std::isfinite(ynew[i])) finite = false;
      double sc = scale(i, y, ynew);
      err += (E / sc) * (E / sc);
    }
    err = finite ? std::sqrt(err / N) : 1e10;

    if (err <= 1.0) {
      if (dense) {
        DenseBlock b;
        b.t0 = t;
        b.h = h;
        b.rc.resize(N);
        for (std::size_t i = 0; i < N; ++i) {
          double dy = ynew[i] - y[i];
          double bspl = h * k1[i] - dy;
          b.rc[i][0] = y[i];
          b.rc[i][1] = dy;
          b.rc[i][2] = bspl;
          b.rc[i][3] = dy - h * k7[i] - bspl;
          b.rc[i][4] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] + T::d5 * k5[i] +
                            T::d6 * k6[i] + T::d7 * k7[i]);
        }
        dense->push_back(std::move(b));
      }
      t += h;
      y = ynew;
      k1 = k7;  // first-same-as-last
      ++stats.naccepted;
      if (nodes) nodes->push_back(t);
      if (states) states->push_back(y);
      if (on_accept) on_accept(t, y);

      double alpha = 0.2 - opts.beta * 0.75;
      double fac = opts.safety * std::pow(std::max(err, 1e-16), -alpha) * std::pow(err_old, opts.beta);
      fac = std::clamp(fac, opts.facmin, last_rejected ? 1.0 : opts.facmax);
      h *= fac;
      err_old = std::max(err, 1e-4);
      last_rejected = false;
    } else {
      double fac = std::clamp(opts.safety * std::pow(err, -0.2), opts.facmin, 1.0);
      h *= fac;
      ++stats.nrejected;
      last_rejected = true;
    }
  }
  return stats;
}

// --------------------------------------------------------------------------
// Trajectory of a second-order scalar ODE integrated as (w, w').

using State2 = std::array<double, 2>;

class OdeTrajectory {
 public:
  std::vector<double> z;
  std::vector<State2> w;
  std::vector<DenseBlock> dense;
  IntegStats stats;

  double z_begin() const { return z.front(); }
  double z_end() const { return z.back(); }

  bool covers(double zq, double pad = 1e-9) const {
    double lo = std::min(z.front(), z.back()) - pad;
    double hi = std::max(z.front(), z.back()) + pad;
    return zq >= lo && zq <= hi;
  }

  // Interpolated (w, w') at zq via the dense-output polynomial.
  State2 eval(double zq) const {
    if (z.size() < 2) {
      if (!z.empty() && std::abs(zq - z.front()) <= 1e-12) return w.front();
      raise(ErrorKind::DomainViolation, "trajectory has no extent");
    }
    if (!covers(zq)) raise(ErrorKind::DomainViolation, "query outside integrated interval");
    const bool fwd = z.back() >= z.front();
    std::size_t lo = 0, hi = dense.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      double zr = z[mid + 1];
      if ((fwd && zq <= zr) || (!fwd && zq >= zr)) hi = mid;
      else lo = mid + 1;
    }
    const DenseBlock& b = dense[lo];
    return {dense_eval_component(b, 0, zq), dense_eval_component(b, 1, zq)};
  }
};

// Integrates w'' = rhs2(z, w, w') and records the dense trajectory.
template <class RHS2>
OdeTrajectory integrate_second_order(RHS2&& rhs2, double z0, double w0, double wp0, double z1,
                                     double tol, const Dopri5Options& opts = {},
                                     const std::function<void(double, const State2&)>& on_accept = {}) {
  OdeTrajectory traj;
  State2 y{w0, wp0};
  auto sys = [&rhs2](double zz, const State2& s, State2& dy) {
    dy[0] = s[1];
    dy[1] = rhs2(zz, s[0], s[1]);
  };
  traj.stats = dopri5(sys, z0, y, z1, tol, opts, &traj.z, &traj.w, &traj.dense, on_accept);
  return traj;
}

}  // namespace simred
