#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "simred/catalog.hpp"
#include "simred/integrate.hpp"
#include "simred/jet.hpp"
#include "simred/params.hpp"

namespace simred {

// A similarity profile w(z) known with two derivatives.
using ProfileFn = std::function<CJet(double z)>;

// One similarity reduction: similarity variable z(x,t) with derivatives,
// the reduced second-order ODE w'' = rhs(z, w, w'), and the ansatz that
// rebuilds u(x,t) from a profile in the reduction's own variable
// (w = h for the profile reductions, w = y for the power-substituted ones).
struct ReductionSpec {
  std::string id;
  std::string provenance;
  PdeParams params;
  ConstMap constants;
  bool singular_at_zero{false};  // the ODE carries 1/z terms

  std::function<Jet2(double x, double t)> z_map;
  std::function<double(double z, double w, double wp)> ode_rhs;
  std::function<Jet2(const ProfileFn&, double x, double t)> reconstruct;

  double z_of(double x, double t) const { return z_map(x, t).v; }
};

namespace reduction_detail {

// w^e with the convention that a vanishing w with vanishing w' contributes 0
// to terms of the form w^e * w'.
inline double w_pow_times(double w, double e, double factor) {
  if (factor == 0.0) return 0.0;
  if (w <= 0.0) raise(ErrorKind::NonPositiveW, "profile must be positive for fractional powers");
  return std::pow(w, e) * factor;
}

inline void require_nonsingular(double z, bool singular_at_zero) {
  if (singular_at_zero && z == 0.0) raise(ErrorKind::SingularPoint, "reduced equation is singular at z = 0");
}

}  // namespace reduction_detail

// Factory for the seven reductions.  `params` must satisfy the row's
// constraint; constants supply the free group parameter.
inline ReductionSpec make_reduction(const std::string& id, const PdeParams& params,
                                    const ConstMap& constants = {}) {
  ReductionSpec spec;
  spec.id = id;
  spec.params = params;
  spec.constants = constants;
  const double nv = params.n_val();
  const double C = params.C;
  const double lam = params.lambda;

  auto need = [&](const char* name) { return get_const(constants, name); };
  auto need_or = [&](const char* name, double fb) { return get_const(constants, name, fb); };

  if (id == "i1") {
    // z = (x+l)^(2-a)/t, u = (x+l)^(a/(n-1)) h(z), h = y^(1/n); ODE in y.
    const double a = need_or("a", 2.0 - 2.0 * nv);
    if (a == 2.0) raise(ErrorKind::InadmissibleConstants, "row 1 needs a != 2");
    const double alpha = a / (nv - 1.0);
    const double K2 = C + 1.0 + a * (nv + 1.0) / (nv - 1.0);
    const double D = nv * alpha * (alpha * nv - 1.0 + C) / ((2.0 - a) * (2.0 - a));
    spec.provenance = "optimal-system row 1";
    spec.singular_at_zero = true;
    spec.z_map = [=](double x, double t) {
      if (t == 0.0) raise(ErrorKind::DomainViolation, "row 1 similarity variable needs t != 0");
      return pow(jet_x(x) + lam, 2.0 - a) / jet_t(t);
    };
    spec.ode_rhs = [=](double z, double y, double yp) {
      reduction_detail::require_nonsingular(z, true);
      double frac = reduction_detail::w_pow_times(y, 1.0 / nv - 1.0, yp) / (nv * (2.0 - a) * (2.0 - a));
      return -frac - K2 * yp / ((2.0 - a) * z) - D * y / (z * z);
    };
    spec.reconstruct = [=](const ProfileFn& yfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 Y = compose(yfn(Z.v), Z);
      return pow(W, alpha) * pow(Y, 1.0 / nv);
    };
  } else if (id == "i2") {
    // z = e^{-at}(x+l), u = (x+l)^(2/(n-1)) h(z); ODE in h.
    const double a = need_or("a", 1.0);
    const double alpha = 2.0 / (nv - 1.0);
    const double F1 = (C * nv + 4.0 * nv - C) / (nv - 1.0);
    const double F0 = 2.0 * (C * nv + nv - C + 1.0) / ((nv - 1.0) * (nv - 1.0));
    spec.provenance = "optimal-system row 2";
    spec.singular_at_zero = true;
    spec.z_map = [=](double x, double t) { return exp(jet_t(t) * (-a)) * (jet_x(x) + lam); };
    spec.ode_rhs = [=](double z, double h, double hp) {
      reduction_detail::require_nonsingular(z, true);
      if (h <= 0.0) raise(ErrorKind::NonPositiveW, "row 2 profile must stay positive");
      double hm = std::pow(h, nv - 1.0);
      return -(nv - 1.0) * hp * hp / h - F1 * hp / z - a * hp / (nv * z * hm) - F0 * h / (z * z);
    };
    spec.reconstruct = [=](const ProfileFn& hfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 H = compose(hfn(Z.v), Z);
      return pow(W, alpha) * H;
    };
  } else if (id == "i3") {
    // z = c1(n-1)(x+l)^(C-1) + log t with c1 = a/(n+1); requires the
    // extended branch C = (3n+1)/(n+1); ODE in y, h = y^(1/n).
    if (!params.has_extended_group())
      raise(ErrorKind::InadmissibleConstants, "row 3 needs C = (3n+1)/(n+1)");
    const double a = need("a");
    const double c1 = a / (nv + 1.0);
    if (c1 == 0.0) raise(ErrorKind::InadmissibleConstants, "row 3 needs a != 0");
    const double Kc = (nv + 1.0) * (nv + 1.0) /
                      (4.0 * c1 * c1 * (nv - 1.0) * (nv - 1.0) * nv * nv * nv);
    spec.provenance = "optimal-system row 3";
    spec.z_map = [=](double x, double t) {
      if (t <= 0.0) raise(ErrorKind::DomainViolation, "row 3 similarity variable needs t > 0");
      return c1 * (nv - 1.0) * pow(jet_x(x) + lam, C - 1.0) + log(jet_t(t));
    };
    spec.ode_rhs = [=](double z, double y, double yp) {
      double frac = Kc * std::exp(-z) * reduction_detail::w_pow_times(y, 1.0 / nv - 1.0, yp);
      return frac - 2.0 * nv * yp / (nv - 1.0) - nv * nv * y / ((nv - 1.0) * (nv - 1.0));
    };
    spec.reconstruct = [=](const ProfileFn& yfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 Y = compose(yfn(Z.v), Z);
      return exp(c1 * pow(W, C - 1.0)) * pow(W, -2.0 / (nv + 1.0)) * pow(Y, 1.0 / nv);
    };
  } else if (id == "i4") {
    // Resolved similarity variable z = a(C-2)(x+l)^(C-1) - t (the printed
    // quotient by t is not invariant under the row's generator); the reduced
    // equation is autonomous: y'' + c y^(1/n-1) y' = 0 with
    // c = (n-1)^(-4/(n+1)) (n+1)^4 / (4 a^2 n^3).
    if (!params.has_extended_group())
      raise(ErrorKind::InadmissibleConstants, "row 4 needs C = (3n+1)/(n+1)");
    const double a = need("a");
    if (a == 0.0) raise(ErrorKind::InadmissibleConstants, "row 4 needs a != 0");
    const double cstar = d_pow(nv - 1.0, -4.0 / (nv + 1.0)) * powi(nv + 1.0, 4) /
                         (4.0 * a * a * nv * nv * nv);
    spec.provenance = "optimal-system row 4 (similarity variable re-derived)";
    spec.z_map = [=](double x, double t) {
      return a * (C - 2.0) * pow(jet_x(x) + lam, C - 1.0) - jet_t(t);
    };
    spec.ode_rhs = [=](double, double y, double yp) {
      return -cstar * reduction_detail::w_pow_times(y, 1.0 / nv - 1.0, yp);
    };
    spec.reconstruct = [=](const ProfileFn& yfn, double x, double t) {
      Jet2 W = (jet_x(x) + lam) * (nv - 1.0);
      Jet2 Z = spec.z_map(x, t);
      Jet2 Y = compose(yfn(Z.v), Z);
      return pow(W, -2.0 / (nv + 1.0)) * pow(Y, 1.0 / nv);
    };
  } else if (id == "nc-c2") {
    // z = x - kt, u = (h(z) - 1/(k(x+l)))^2, h'' + 2k h h' = 0.
    const double k = need("k");
    if (k == 0.0) raise(ErrorKind::InadmissibleConstants, "case C=2 needs k != 0");
    spec.provenance = "nonclassical case C=2";
    spec.z_map = [=](double x, double t) { return jet_x(x) - k * jet_t(t); };
    spec.ode_rhs = [=](double, double h, double hp) { return -2.0 * k * h * hp; };
    spec.reconstruct = [=](const ProfileFn& hfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 H = compose(hfn(Z.v), Z);
      Jet2 d = H - 1.0 / (k * W);
      return d * d;
    };
  } else if (id == "nc-c53") {
    // z = (3/2)(x+l)^(2/3) - k1 t, u = (x+l)^(-4/3) h(z),
    // 2 h h'' - (h')^2 + 4 k1 h^(3/2) h' = 0.
    const double k1 = need("k1");
    if (k1 == 0.0) raise(ErrorKind::InadmissibleConstants, "case C=5/3 needs k1 != 0");
    spec.provenance = "nonclassical case C=5/3 (equation re-derived)";
    spec.z_map = [=](double x, double t) {
      return 1.5 * pow(jet_x(x) + lam, 2.0 / 3.0) - k1 * jet_t(t);
    };
    spec.ode_rhs = [=](double, double h, double hp) {
      if (h <= 0.0) raise(ErrorKind::NonPositiveW, "case C=5/3 profile must stay positive");
      return (hp * hp - 4.0 * k1 * std::pow(h, 1.5) * hp) / (2.0 * h);
    };
    spec.reconstruct = [=](const ProfileFn& hfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 H = compose(hfn(Z.v), Z);
      return pow(W, -4.0 / 3.0) * H;
    };
  } else if (id == "nc-cm1") {
    // z = (x+l)^2/(2 k1) - t, u = (h(z)(x+l)^2 - 2)^2/k1^2, h'' + 2 k1 h h' = 0.
    const double k1 = need("k1");
    if (k1 == 0.0) raise(ErrorKind::InadmissibleConstants, "case C=-1 needs k1 != 0");
    spec.provenance = "nonclassical case C=-1 (similarity variable re-derived)";
    spec.z_map = [=](double x, double t) {
      Jet2 W = jet_x(x) + lam;
      return W * W / (2.0 * k1) - jet_t(t);
    };
    spec.ode_rhs = [=](double, double h, double hp) { return -2.0 * k1 * h * hp; };
    spec.reconstruct = [=](const ProfileFn& hfn, double x, double t) {
      Jet2 W = jet_x(x) + lam;
      Jet2 Z = spec.z_map(x, t);
      Jet2 H = compose(hfn(Z.v), Z);
      Jet2 d = H * W * W - 2.0;
      return d * d / (k1 * k1);
    };
  } else {
    raise(ErrorKind::ConfigError, "unknown reduction '" + id + "'");
  }
  return spec;
}

inline const std::vector<std::string>& reduction_ids() {
  static const std::vector<std::string> ids{"i1", "i2", "i3", "i4", "nc-c2", "nc-c53", "nc-cm1"};
  return ids;
}

inline double similarity_z(const ReductionSpec& spec, double x, double t) {
  return spec.z_of(x, t);
}

inline double reduced_rhs(const ReductionSpec& spec, double z, double w, double wp) {
  return spec.ode_rhs(z, w, wp);
}

inline Jet2 reconstruct(const ReductionSpec& spec, const ProfileFn& wfn, double x, double t) {
  return spec.reconstruct(wfn, x, t);
}

// Residual of the row-1 equation in the profile variable h (the form printed
// before the h = y^(1/n) substitution), used for the substitution-coherence
// check.
inline double i1_profile_ode_residual(const PdeParams& params, double a, double z, double h,
                                      double hp, double hpp) {
  double nv = params.n_val(), C = params.C;
  double alpha = a / (nv - 1.0);
  double K2 = C + 1.0 + a * (nv + 1.0) / (nv - 1.0);
  if (h <= 0.0) raise(ErrorKind::NonPositiveW, "profile must be positive");
  if (z == 0.0) raise(ErrorKind::SingularPoint, "singular at z = 0");
  return hpp + (nv - 1.0) * hp * hp / h + hp / (nv * (2.0 - a) * (2.0 - a) * std::pow(h, nv - 1.0)) +
         K2 * hp / ((2.0 - a) * z) + alpha * (alpha * nv - 1.0 + C) * h / ((2.0 - a) * (2.0 - a) * z * z);
}

// ---------------------------------------------------------------------------
// Integration of the reduced equations.

struct IntegrateReducedOptions {
  double singular_margin{1e-3};
  Dopri5Options dopri;
};

inline OdeTrajectory integrate_reduced(const ReductionSpec& spec, double z0, double w0, double wp0,
                                       double z1, double tol,
                                       const IntegrateReducedOptions& opts = {}) {
  if (!(tol >= 1e-13 && tol <= 1e-4))
    raise(ErrorKind::ConfigError, "tolerance must lie in [1e-13, 1e-4]");
  if (spec.singular_at_zero) {
    double lo = std::min(z0, z1), hi = std::max(z0, z1);
    if (lo - opts.singular_margin <= 0.0 && hi + opts.singular_margin >= 0.0)
      raise(ErrorKind::SingularPoint,
            "integration interval must exclude z = 0 by the singular margin");
  }
  return integrate_second_order(
      [&spec](double z, double w, double wp) { return spec.ode_rhs(z, w, wp); }, z0, w0, wp0, z1,
      tol, opts.dopri);
}

// Profile backed by a trajectory's dense output; the second derivative is
// recovered from the reduced equation itself.
inline ProfileFn trajectory_profile(const ReductionSpec& spec, const OdeTrajectory& traj) {
  const OdeTrajectory* tr = &traj;
  const ReductionSpec* sp = &spec;
  return [tr, sp](double z) {
    State2 s = tr->eval(z);
    return CJet{s[0], s[1], sp->ode_rhs(z, s[0], s[1])};
  };
}

// ---------------------------------------------------------------------------
// First integrals.

struct FirstIntegralSpec {
  std::string reduction_id;
  std::string name;
  std::string constant_name{"c1"};
  std::function<double(double z, double w, double wp)> F;
};

// Row-1 first integral at a = 2-2n:
//   F = -y/z + C y/(2nz) - y/(2nz) + y' + y^(1/n)/(4 n^2).
inline FirstIntegralSpec first_integral_i1(const PdeParams& params) {
  double nv = params.n_val(), C = params.C;
  FirstIntegralSpec fi;
  fi.reduction_id = "i1";
  fi.name = "row-1 integral (a = 2-2n)";
  fi.F = [nv, C](double z, double y, double yp) {
    if (z == 0.0) raise(ErrorKind::SingularPoint, "singular at z = 0");
    if (y < 0.0) raise(ErrorKind::NonPositiveW, "y must be nonnegative");
    double ypow;
    if (y == 0.0) {
      if (nv < 0.0) raise(ErrorKind::NonPositiveW, "y = 0 not admitted for negative n");
      ypow = 0.0;  // y^(1/n) -> 0 for n > 0
    } else {
      ypow = std::pow(y, 1.0 / nv);
    }
    return -y / z + C * y / (2.0 * nv * z) - y / (2.0 * nv * z) + yp + ypow / (4.0 * nv * nv);
  };
  return fi;
}

// Row-2 integral in the profile variable, valid at C = -(n+1)/(n-1):
//   F = z h^(n-1) h' + h^n (3n-1)/((n-1)n) - h^n/n + a h/n.
inline FirstIntegralSpec first_integral_i2_h(const PdeParams& params, double a) {
  double nv = params.n_val();
  double want = -(nv + 1.0) / (nv - 1.0);
  if (!approx_eq(params.C, want))
    raise(ErrorKind::InadmissibleConstants, "row-2 integral needs C = -(n+1)/(n-1)");
  FirstIntegralSpec fi;
  fi.reduction_id = "i2";
  fi.name = "row-2 integral, profile variable";
  fi.F = [nv, a](double z, double h, double hp) {
    if (h <= 0.0) raise(ErrorKind::NonPositiveW, "profile must be positive");
    double hn = std::pow(h, nv);
    return z * std::pow(h, nv - 1.0) * hp + hn * (3.0 * nv - 1.0) / ((nv - 1.0) * nv) - hn / nv +
           a * h / nv;
  };
  return fi;
}

// The same integral after h = y^(1/(n-1)):  F = 2y/z - a/(nz) + a/z + y'.
// It equals the profile form divided by z y^(1/(n-1))/(n-1), so it is
// constant along exactly the trajectories on the zero level set.
inline FirstIntegralSpec first_integral_i2_y(const PdeParams& params, double a) {
  double nv = params.n_val();
  double want = -(nv + 1.0) / (nv - 1.0);
  if (!approx_eq(params.C, want))
    raise(ErrorKind::InadmissibleConstants, "row-2 integral needs C = -(n+1)/(n-1)");
  FirstIntegralSpec fi;
  fi.reduction_id = "i2";
  fi.name = "row-2 integral, power variable";
  fi.F = [nv, a](double z, double y, double yp) {
    if (z == 0.0) raise(ErrorKind::SingularPoint, "singular at z = 0");
    return 2.0 * y / z - a / (nv * z) + a / z + yp;
  };
  return fi;
}

inline double first_integral(const FirstIntegralSpec& fi, double z, double w, double wp) {
  return fi.F(z, w, wp);
}

// ---------------------------------------------------------------------------
// Closed-form profiles.

// Kink family of h'' + 2k h h' = 0 (tanh branch for k*k3 > 0, tan branch for
// k*k3 < 0), as a profile function.
inline ProfileFn kink_profile_fn(double k, double k2, double k3) {
  if (k * k3 == 0.0) raise(ErrorKind::InadmissibleConstants, "k*k3 must be nonzero");
  return [k, k2, k3](double z) {
    return [&] {
      CJet Z = cjet_var(z);
      double kk3 = k * k3;
      if (kk3 > 0) {
        double k4 = std::sqrt(kk3);
        return (k4 / k) * tanh((Z + k2) * k4);
      }
      double k4 = std::sqrt(-kk3);
      return (-k4 / k) * tan((Z + k2) * k4);
    }();
  };
}

// Squared kink for the C=5/3 reduction.
inline ProfileFn squared_kink_profile_fn(double k1, double k2, double k3) {
  ProfileFn phi = kink_profile_fn(k1, k2, k3);
  return [phi](double z) {
    CJet p = phi(z);
    return p * p;
  };
}

// Row-1 closed-form y(z) on the zero level set of the first integral.
inline ProfileFn dipole_y_profile_fn(const PdeParams& params, double k1) {
  double nv = params.n_val();
  double k2 = (2.0 * params.C - 2.0) * nv - 4.0 * nv * nv;
  double K = 4.0 * nv * nv * nv + k2 * (nv - 1.0);
  if (K == 0.0) raise(ErrorKind::InadmissibleConstants, "degenerate dipole family");
  return [nv, k2, K, k1](double z) {
    CJet Z = cjet_var(z);
    if (z <= 0.0) raise(ErrorKind::DomainViolation, "dipole profile needs z > 0");
    CJet B = (1.0 - nv) * pow(Z, (4.0 * nv * nv + k2) / (4.0 * nv * nv)) +
             (k1 * K) * pow(Z, k2 / (4.0 * nv * nv * nv));
    return pow(B, nv / (nv - 1.0)) * (1.0 / d_pow(K, nv / (nv - 1.0))) *
           pow(Z, -k2 / (4.0 * nv * nv - 4.0 * nv));
  };
}

// Row-2 closed-form y(z) = c/z^2 - a(n-1)/(2n) (zero-constant branch).
inline ProfileFn i2_y_profile_fn(const PdeParams& params, double a, double c) {
  double nv = params.n_val();
  return [nv, a, c](double z) {
    CJet Z = cjet_var(z);
    return c / (Z * Z) - a * (nv - 1.0) / (2.0 * nv);
  };
}

// The same branch transported to the profile variable h = y^(1/(n-1)).
inline ProfileFn i2_h_profile_fn(const PdeParams& params, double a, double c) {
  ProfileFn y = i2_y_profile_fn(params, a, c);
  double e = 1.0 / (params.n_val() - 1.0);
  return [y, e](double z) { return pow(y(z), e); };
}

}  // namespace simred
