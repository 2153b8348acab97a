#pragma once

#include <cmath>
#include <functional>

#include "simred/errors.hpp"

namespace simred {

namespace quad_detail {

struct Simpson {
  const std::function<double(double)>& f;
  double tol;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) const {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) raise(ErrorKind::QuadratureFailure, "adaptive quadrature depth exhausted");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    Simpson half{f, tol * 0.5, max_depth};
    return half.recurse(a, m, fa, flm, fm, left, depth - 1) +
           half.recurse(m, b, fm, frm, fb, right, depth - 1);
  }
};

}  // namespace quad_detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double tol, int max_depth = 48) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  quad_detail::Simpson s{f, tol, max_depth};
  return s.recurse(a, b, fa, fm, fb, whole, max_depth);
}

}  // namespace simred
