#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simred/catalog.hpp"
#include "simred/core.hpp"
#include "simred/field.hpp"
#include "simred/quadrature.hpp"
#include "simred/rng.hpp"

namespace simred {

struct VerificationReport {
  std::string subject;
  long long samples{0};
  double max_abs_residual{0};
  double arg_x{0}, arg_t{0};
  double tolerance{0};
  std::uint64_t seed{0};
  bool pass{false};

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["subject"] = subject;
    j["samples"] = samples;
    j["max_residual"] = max_abs_residual;
    j["argmax"] = {{"x", arg_x}, {"t", arg_t}};
    j["tolerance"] = tolerance;
    j["seed"] = seed;
    j["pass"] = pass;
    return j;
  }
};

// Max |pde_residual| over a tensor grid; pass iff it stays within tol.
inline VerificationReport residual_scan(const PdeParams& params, const ScalarField& field,
                                        const Region& region, int nx, int nt, double tol,
                                        const std::string& subject = "field",
                                        std::uint64_t seed = 0) {
  if (!field.domain().contains(region))
    raise(ErrorKind::DomainViolation, "scan region must lie inside the field domain");
  GridMax m = max_abs_residual_on_grid(params, field, region, nx, nt);
  VerificationReport rep;
  rep.subject = subject;
  rep.samples = (long long)nx * nt;
  rep.max_abs_residual = m.max_abs;
  rep.arg_x = m.arg_x;
  rep.arg_t = m.arg_t;
  rep.tolerance = tol;
  rep.seed = seed;
  rep.pass = m.max_abs <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// One-parameter flows.

struct FlowPointImage {
  double x, t, u;
};

// Image of a point of the solution graph under the closed-form flow.
inline FlowPointImage apply_flow(const FlowSpec& flow, const PdeParams& params, double eps,
                                 double x, double t, double u) {
  if (std::holds_alternative<std::monostate>(flow))
    raise(ErrorKind::FlowUnavailable, "generator has no closed-form flow");
  if (std::holds_alternative<FlowTimeShift>(flow)) return {x, t + eps, u};
  if (const auto* sc = std::get_if<FlowXtScale>(&flow)) {
    double w = params.shifted(x);
    return {std::exp(sc->ax * eps) * w - params.lambda, std::exp(sc->bt * eps) * t,
            std::exp(sc->gu * eps) * u};
  }
  const auto& pw = std::get<FlowPower>(flow);
  double w = params.shifted(x);
  double Pm = d_pow(w, pw.m) + pw.kappa * eps;
  if (Pm <= 0.0) raise(ErrorKind::DomainViolation, "flow parameter leaves the admissible strip");
  double xhat = d_pow(Pm, 1.0 / pw.m) - params.lambda;
  double uhat = u * d_pow(d_pow(w, pw.m) / Pm, pw.uq);
  return {xhat, t, uhat};
}

inline FlowSpec generator_flow(const GeneratorSpec& g, const PdeParams& params,
                               const ConstMap* consts = nullptr) {
  if (!g.flow) return std::monostate{};
  return g.flow(params, consts ? *consts : g.default_constants);
}

// The transported field: the flow image of the solution graph, evaluated as
// a field of (X, T) with exact jets.
inline ScalarField flow_transport(const GeneratorSpec& gen, const PdeParams& params, double eps,
                                  const ScalarField& base, const ConstMap* consts = nullptr) {
  FlowSpec flow = generator_flow(gen, params, consts);
  if (std::holds_alternative<std::monostate>(flow))
    raise(ErrorKind::FlowUnavailable, "generator '" + gen.id + "' has no closed-form flow");
  const Region dom = base.domain();
  const double lam = params.lambda;

  if (std::holds_alternative<FlowTimeShift>(flow)) {
    Region r{dom.x0, dom.x1, dom.t0 + eps, dom.t1 + eps};
    return ScalarField(r, lam, [base, eps](double X, double T) { return base(X, T - eps); });
  }

  if (const auto* sc = std::get_if<FlowXtScale>(&flow)) {
    double ex = std::exp(sc->ax * eps), et = std::exp(sc->bt * eps), eu = std::exp(sc->gu * eps);
    Region r{ex * (dom.x0 + lam) - lam, ex * (dom.x1 + lam) - lam, et * dom.t0, et * dom.t1};
    return ScalarField(r, lam, [base, lam, ex, et, eu](double X, double T) {
      double x = (X + lam) / ex - lam;
      double t = T / et;
      Jet2 J = base(x, t);
      return Jet2{eu * J.v, eu * J.vx / ex, eu * J.vxx / (ex * ex), eu * J.vt / et};
    });
  }

  const FlowPower pw = std::get<FlowPower>(flow);
  auto fwd_x = [pw, lam](double x, double eps_) {
    double Pm = d_pow(x + lam, pw.m) + pw.kappa * eps_;
    if (Pm <= 0.0) raise(ErrorKind::DomainViolation, "flow parameter leaves the admissible strip");
    return d_pow(Pm, 1.0 / pw.m) - lam;
  };
  Region r{fwd_x(dom.x0, eps), fwd_x(dom.x1, eps), dom.t0, dom.t1};
  return ScalarField(r, lam, [base, pw, lam, eps](double X, double T) {
    Jet2 WX = jet_x(X) + lam;
    Jet2 P = pow(WX, pw.m) - pw.kappa * eps;  // (x+l)^m as a jet in X
    if (P.v <= 0.0) raise(ErrorKind::DomainViolation, "flow parameter leaves the admissible strip");
    Jet2 Wx = pow(P, 1.0 / pw.m);             // x+l as a jet in X
    Jet2 J = base(Wx.v - lam, T);
    Jet2 comp = compose_x(J, Wx);
    Jet2 phi = pow(P / pow(WX, pw.m), pw.uq);
    return phi * comp;
  });
}

// Worst-case residual scan of the flow images over a list of group parameters.
inline VerificationReport check_symmetry(const PdeParams& params, const GeneratorSpec& gen,
                                         const SolutionInstance& solution,
                                         const std::vector<double>& eps_list, int nx, int nt,
                                         double tol, const ConstMap* consts = nullptr) {
  VerificationReport worst;
  worst.subject = gen.id + " on " + solution.spec->id;
  worst.tolerance = tol;
  worst.pass = true;
  if (!solution.spec->verified_against_pde)
    raise(ErrorKind::UnverifiedField, "solution must be verified before symmetry checks");
  ScalarField base = solution.field();
  for (double eps : eps_list) {
    ScalarField moved = flow_transport(gen, params, eps, base, consts);
    Region r = moved.domain();
    double px = 0.01 * (r.x1 - r.x0), pt = 0.01 * (r.t1 - r.t0);
    Region inner{r.x0 + px, r.x1 - px, r.t0 + pt, r.t1 - pt};
    VerificationReport rep = residual_scan(params, moved, inner, nx, nt, tol, worst.subject);
    worst.samples += rep.samples;
    if (rep.max_abs_residual > worst.max_abs_residual) {
      worst.max_abs_residual = rep.max_abs_residual;
      worst.arg_x = rep.arg_x;
      worst.arg_t = rep.arg_t;
    }
    worst.pass = worst.pass && rep.pass;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Nonclassical determining equations (q normalized to 1).

using InfinitesimalJetFn = std::function<XUJet(double x, double t, double u)>;

struct DeterminingResiduals {
  std::array<double, 4> d{};
  double max_abs() const {
    double m = 0;
    for (double v : d) m = std::max(m, std::abs(v));
    return m;
  }
};

inline DeterminingResiduals determining_residuals(const PdeParams& params,
                                                  const InfinitesimalJetFn& p_fn,
                                                  const InfinitesimalJetFn& r_fn, double x,
                                                  double t, double u) {
  if (u <= 0.0) raise(ErrorKind::NonPositiveU, "determining equations need u > 0");
  double w = params.shifted(x);
  double nv = params.n_val();
  double f = nv * params.C / w;
  double fp = -nv * params.C / (w * w);

  XUJet P = p_fn(x, t, u);
  XUJet R = r_fn(x, t, u);

  double un1 = r_pow(u, params.n - Rational(1));
  double un2 = r_pow(u, params.n - Rational(2));
  double un3 = r_pow(u, params.n - Rational(3));
  double un = r_pow(u, params.n);
  double unp1 = r_pow(u, params.n + Rational(1));

  DeterminingResiduals out;
  out.d[0] = u * P.duu - (nv - 1.0) * P.du;
  out.d[1] = -(nv * R.duu - 2.0 * nv * P.dxu + 2.0 * f * P.du) * un1 -
             (nv - 1.0) * nv * R.du * un2 + (nv - 1.0) * nv * R.v * un3 - 2.0 * P.v * P.du;
  out.d[2] = -(2.0 * nv * R.dxu - nv * P.dxx + f * P.dx + fp * P.v) * unp1 -
             2.0 * (nv - 1.0) * nv * R.dx * un +
             (2.0 * P.du * R.v - 2.0 * P.v * P.dx - P.dt) * u * u + (nv - 1.0) * P.v * R.v * u;
  out.d[3] = -(nv * R.dxx + f * R.dx) * un + (R.dt + 2.0 * P.dx * R.v) * u -
             (nv - 1.0) * R.v * R.v;
  return out;
}

// Determining residuals for a catalog nonclassical generator.
inline DeterminingResiduals determining_residuals(const PdeParams& params, const GeneratorSpec& gen,
                                                  double x, double t, double u,
                                                  const ConstMap* consts = nullptr) {
  if (!gen.p_jet || !gen.r_jet)
    raise(ErrorKind::ConfigError, "generator '" + gen.id + "' carries no infinitesimal jets");
  const ConstMap& c = consts ? *consts : gen.default_constants;
  auto pf = [&](double xx, double tt, double uu) { return gen.p_jet(params, c, xx, tt, uu); };
  auto rf = [&](double xx, double tt, double uu) { return gen.r_jet(params, c, xx, tt, uu); };
  return determining_residuals(params, pf, rf, x, t, u);
}

// p u_x + q u_t - r evaluated on the field's jet.
inline double invariant_surface_residual(double p, double q, double r, const ScalarField& field,
                                         double x, double t) {
  Jet2 J = field(x, t);
  return p * J.vx + q * J.vt - r;
}

// ---------------------------------------------------------------------------
// Potential construction for the auxiliary system
//   v_x = (x+l) u,   v_t = (x+l)(u^n)_x + (C-1) u^n.

class PotentialField {
 public:
  PotentialField(PdeParams params, ScalarField u, double x0, double t0, double quad_tol)
      : params_(params), u_(std::move(u)), x0_(x0), t0_(t0), quad_tol_(quad_tol) {}

  // v along the x-first path: x-leg at time t, t-leg at x0.
  double v(double x, double t) const {
    double xleg = integrate_adaptive(
        [&](double xi) { return params_.shifted(xi) * u_(xi, t).v; }, x0_, x, quad_tol_);
    double tleg = integrate_adaptive(
        [&](double tau) { return flux_F(params_, x0_, u_(x0_, tau)); }, t0_, t, quad_tol_);
    return xleg + tleg;
  }

  // v along the t-first path: t-leg at x, x-leg at t0.
  double v_t_first(double x, double t) const {
    double tleg = integrate_adaptive(
        [&](double tau) { return flux_F(params_, x, u_(x, tau)); }, t0_, t, quad_tol_);
    double xleg = integrate_adaptive(
        [&](double xi) { return params_.shifted(xi) * u_(xi, t0_).v; }, x0_, x, quad_tol_);
    return tleg + xleg;
  }

  // Exact by the fundamental theorem applied to the x-leg.
  double v_x(double x, double t) const { return params_.shifted(x) * u_(x, t).v; }

  // Differentiation of the x-first path under the integral sign.
  double v_t(double x, double t) const {
    double dleg = integrate_adaptive(
        [&](double xi) { return params_.shifted(xi) * u_(xi, t).vt; }, x0_, x, quad_tol_);
    return dleg + flux_F(params_, x0_, u_(x0_, t));
  }

  const PdeParams& params() const { return params_; }
  const ScalarField& u() const { return u_; }
  double x0() const { return x0_; }
  double t0() const { return t0_; }
  double quad_tol() const { return quad_tol_; }

 private:
  PdeParams params_;
  ScalarField u_;
  double x0_, t0_;
  double quad_tol_;
};

inline PotentialField build_potential(const PdeParams& params, const ScalarField& field, double x0,
                                      double t0, const Region& region, double quad_tol,
                                      bool field_verified) {
  if (!field_verified)
    raise(ErrorKind::UnverifiedField,
          "potential construction is path-dependent on unverified fields");
  if (!region.contains(x0, t0))
    raise(ErrorKind::DomainViolation, "base point must lie in the region");
  for (double x : {region.x0, 0.5 * (region.x0 + region.x1), region.x1})
    for (double t : {region.t0, region.t1})
      if (field(x, t).v <= 0.0)
        raise(ErrorKind::NonPositiveU, "potential construction needs u > 0");
  return PotentialField(params, field, x0, t0, quad_tol);
}

// Max residual of both auxiliary-system equations over a tensor grid.
inline VerificationReport check_auxiliary_system(const PdeParams& params, const ScalarField& field,
                                                 const PotentialField& pot, const Region& region,
                                                 int nx, int nt, double tol,
                                                 const std::string& subject = "auxiliary system") {
  VerificationReport rep;
  rep.subject = subject;
  rep.tolerance = tol;
  for (int i = 0; i < nx; ++i) {
    double x = region.x0 + (region.x1 - region.x0) * i / (nx - 1);
    for (int j = 0; j < nt; ++j) {
      double t = region.t0 + (region.t1 - region.t0) * j / (nt - 1);
      Jet2 J = field(x, t);
      double e1 = std::abs(pot.v_x(x, t) - params.shifted(x) * J.v);
      double e2 = std::abs(pot.v_t(x, t) - flux_F(params, x, J));
      double e = std::max(e1, e2);
      ++rep.samples;
      if (e > rep.max_abs_residual) {
        rep.max_abs_residual = e;
        rep.arg_x = x;
        rep.arg_t = t;
      }
    }
  }
  rep.pass = rep.max_abs_residual <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Conservation identity on sampled points of arbitrary smooth fields:
// D_x F - D_t G + (x+l) residual = 0, reported as a relative defect.
inline VerificationReport check_conservation_identity(const PdeParams& params,
                                                      const ScalarField& field, int samples,
                                                      double tol, std::uint64_t seed,
                                                      const std::string& subject = "conservation") {
  SplitMix64 rng(seed);
  VerificationReport rep;
  rep.subject = subject;
  rep.tolerance = tol;
  rep.seed = seed;
  const Region& r = field.domain();
  for (int i = 0; i < samples; ++i) {
    double x = rng.uniform(r.x0, r.x1);
    double t = rng.uniform(r.t0, r.t1);
    Jet2 J = field(x, t);
    if (J.v <= 0.0 && params.fractional_n()) continue;
    double lhs = conservation_residual(params, x, J);
    double res = pde_residual(params, x, J);
    double w = params.shifted(x);
    double scale = std::max({1.0, std::abs(lhs), std::abs(w * res)});
    double defect = std::abs(lhs + w * res) / scale;
    ++rep.samples;
    if (defect > rep.max_abs_residual) {
      rep.max_abs_residual = defect;
      rep.arg_x = x;
      rep.arg_t = t;
    }
  }
  rep.pass = rep.max_abs_residual <= tol;
  return rep;
}

}  // namespace simred
