// Acceptance suite: one line per criterion, nonzero exit when any gate fails.
// Every tolerance is pinned here; the runtime budgets are part of the gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "simred/expr.hpp"
#include "simred/mol.hpp"
#include "simred/reduction.hpp"
#include "simred/verify.hpp"

using namespace simred;

namespace {

struct Gate {
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void run(const char* name, double time_budget_s, const std::function<void(Gate&)>& body) {
  Gate g;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(g);
  } catch (const std::exception& e) {
    g.pass = false;
    g.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_budget_s > 0 && secs > time_budget_s) {
    g.pass = false;
    g.detail += (g.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("[%s] %s (%.2fs)%s%s\n", g.pass ? "PASS" : "FAIL", name, secs,
              g.detail.empty() ? "" : " -- ", g.detail.c_str());
  if (!g.pass) ++failures;
}

SolutionInstance tan_branch_instance() {
  PdeParams p(Rational(1, 2), 2.0, 4.0);
  return instantiate(Catalog::get().solution("nc-c2-solution"), p,
                     {{"k", 1.0}, {"k2", -0.9}, {"k3", -1.0}}, Region{0.0, 0.4, 0.0, 0.3});
}

}  // namespace

int main() {
  // 1. Exact-solution suite: all six families within 1e-9 on 50x50 grids.
  run("C1 exact-solution suite", 5.0, [](Gate& g) {
    const double tol = 1e-9;
    for (const auto& spec : Catalog::get().solutions()) {
      SolutionInstance inst = instantiate(spec);
      VerificationReport rep =
          residual_scan(inst.params, inst.field(), inst.domain, 50, 50, tol, spec.id);
      g.require(rep.pass, spec.id + " max=" + std::to_string(rep.max_abs_residual));
    }
    SolutionInstance tanb = tan_branch_instance();
    VerificationReport rep =
        residual_scan(tanb.params, tanb.field(), tanb.domain, 50, 50, tol, "nc-c2 tan branch");
    g.require(rep.pass, "nc-c2 tan branch");
  });

  // 2. Conservation identity on 20 random smooth fields, 1000 points total.
  run("C2 conservation identity", 1.0, [](Gate& g) {
    SplitMix64 rng(24680);
    Region reg{0.6, 2.0, 0.2, 1.4};
    const Rational ns[] = {Rational(1, 2), Rational(2), Rational(3), Rational(-1), Rational(5, 3)};
    double worst = 0;
    for (int f = 0; f < 20; ++f) {
      ScalarField field = random_positive_field(rng, reg, 0.3);
      PdeParams p(ns[f % 5], rng.uniform(-2.0, 2.0), 0.3);
      VerificationReport rep = check_conservation_identity(p, field, 50, 1e-12, rng.next());
      worst = std::max(worst, rep.max_abs_residual);
    }
    g.require(worst <= 1e-12, "relative defect " + std::to_string(worst));
  });

  // 3. Reduction consistency for all seven reductions, 200 points each.
  run("C3 reduction consistency", 10.0, [](Gate& g) {
    struct Setup {
      const char* id;
      PdeParams params;
      ConstMap consts;
      double z0, w0, wp0, z1;
      Region box;
    };
    const std::vector<Setup> setups = {
        {"i1", PdeParams(Rational(2), 0.0, 0.0), {{"a", -2.0}}, 2.45, 2.5, 1.0, 12.1,
         Region{1.52, 1.85, 1.0, 2.0}},
        {"i2", PdeParams(Rational(3), -2.0, 0.0), {{"a", 1.0}}, 0.33, 4.06, -12.0, 2.06,
         Region{1.0, 2.0, 0.0, 1.0}},
        {"i3", PdeParams(Rational(3), 2.5, 0.0), {{"a", 4.0}}, 1.95, 1.0, 0.0, 6.4,
         Region{1.0, 2.0, 1.0, 2.0}},
        {"i4", PdeParams(Rational(3), 2.5, 0.0), {{"a", 2.0}}, -1.1, 1.0, 0.3, 2.9,
         Region{1.0, 2.0, 0.0, 1.0}},
        {"nc-c2", PdeParams(Rational(1, 2), 2.0, 0.0), {{"k", 1.0}}, 1.95, 0.9, 0.1, 4.05,
         Region{3.0, 4.0, 0.0, 1.0}},
        {"nc-c53", PdeParams(Rational(1, 2), 5.0 / 3.0, 0.0), {{"k1", 1.0}}, 0.45, 0.2, 0.6, 2.45,
         Region{1.0, 2.0, 0.0, 1.0}},
        {"nc-cm1", PdeParams(Rational(1, 2), -1.0, 0.0), {{"k1", 1.0}}, 0.95, 0.7, 0.3, 4.55,
         Region{2.0, 3.0, 0.0, 1.0}},
    };
    SplitMix64 rng(314159);
    for (const auto& su : setups) {
      ReductionSpec spec = make_reduction(su.id, su.params, su.consts);
      OdeTrajectory tr = integrate_reduced(spec, su.z0, su.w0, su.wp0, su.z1, 1e-11);
      ProfileFn prof = trajectory_profile(spec, tr);
      double worst = 0;
      int used = 0;
      for (int i = 0; i < 2000 && used < 200; ++i) {
        double x = rng.uniform(su.box.x0, su.box.x1);
        double t = rng.uniform(su.box.t0, su.box.t1);
        double z = spec.z_of(x, t);
        if (!tr.covers(z)) continue;
        Jet2 u = reconstruct(spec, prof, x, t);
        if (u.v <= 0.0) continue;
        worst = std::max(worst, std::abs(pde_residual(su.params, x, u)));
        ++used;
      }
      g.require(used == 200, std::string(su.id) + " sampled only " + std::to_string(used));
      g.require(worst <= 1e-7, std::string(su.id) + " residual " + std::to_string(worst));
    }
  });

  // 4. First integrals: drift <= 100 * tol at tol = 1e-10, and the closed-form
  //    zero-constant branch sits on the zero level set pointwise.
  run("C4 first integrals", 10.0, [](Gate& g) {
    const double tol = 1e-10;
    {
      PdeParams p(Rational(2), 0.0, 0.0);  // a = 2-2n = -2
      auto spec = make_reduction("i1", p, {{"a", -2.0}});
      FirstIntegralSpec fi = first_integral_i1(p);
      OdeTrajectory tr = integrate_reduced(spec, 2.5, 2.5, 1.0, 12.0, tol);
      double F0 = first_integral(fi, 2.5, 2.5, 1.0), drift = 0;
      for (int i = 0; i <= 300; ++i) {
        double z = 2.5 + 9.5 * i / 300.0;
        auto s = tr.eval(z);
        drift = std::max(drift, std::abs(first_integral(fi, z, s[0], s[1]) - F0));
      }
      g.require(drift <= 100.0 * tol, "row-1 drift " + std::to_string(drift));

      ProfileFn y = dipole_y_profile_fn(p, 1.0);
      double worst = 0;
      for (int i = 0; i <= 200; ++i) {
        double z = 2.5 + 9.5 * i / 200.0;
        CJet Y = y(z);
        worst = std::max(worst, std::abs(first_integral(fi, z, Y.f, Y.d1)));
      }
      g.require(worst <= 1e-10, "dipole pointwise " + std::to_string(worst));
    }
    {
      PdeParams p(Rational(3), -2.0, 0.0);
      const double a = 1.0;
      auto spec = make_reduction("i2", p, {{"a", a}});
      FirstIntegralSpec fih = first_integral_i2_h(p, a);
      OdeTrajectory tr = integrate_reduced(spec, 0.4, 2.0, -1.0, 1.5, tol);
      double F0 = first_integral(fih, 0.4, 2.0, -1.0), drift = 0;
      for (int i = 0; i <= 300; ++i) {
        double z = 0.4 + 1.1 * i / 300.0;
        auto s = tr.eval(z);
        drift = std::max(drift, std::abs(first_integral(fih, z, s[0], s[1]) - F0));
      }
      g.require(drift <= 100.0 * tol, "row-2 profile drift " + std::to_string(drift));

      // power-variable form along the zero level set
      FirstIntegralSpec fiy = first_integral_i2_y(p, a);
      double nv = p.n_val(), z0 = 0.4, h0 = 2.0;
      double hp0 = -(std::pow(h0, nv) * (3 * nv - 1) / ((nv - 1) * nv) - std::pow(h0, nv) / nv +
                     a * h0 / nv) /
                   (z0 * std::pow(h0, nv - 1));
      OdeTrajectory tz = integrate_reduced(spec, z0, h0, hp0, 1.3, tol);
      double drift_y = 0;
      for (int i = 0; i <= 300; ++i) {
        double z = z0 + (1.3 - z0) * i / 300.0;
        auto s = tz.eval(z);
        double yv = std::pow(s[0], nv - 1.0), yp = (nv - 1.0) * std::pow(s[0], nv - 2.0) * s[1];
        drift_y = std::max(drift_y, std::abs(first_integral(fiy, z, yv, yp)));
      }
      g.require(drift_y <= 100.0 * tol, "row-2 power drift " + std::to_string(drift_y));
    }
  });

  // 5. Symmetry flows: closure to 1e-12 and transported solutions within 1e-8.
  run("C5 symmetry flows", 10.0, [](Gate& g) {
    const auto& cat = Catalog::get();
    SplitMix64 rng(13579);
    PdeParams pext(Rational(2), 7.0 / 3.0, 0.0);
    for (const char* id : {"v1", "v2", "v3", "v4p"}) {
      const GeneratorSpec& gen = cat.generator(id);
      PdeParams p = gen.constraint.C_extended ? pext : PdeParams(Rational(2), 0.5, 0.0);
      FlowSpec flow = generator_flow(gen, p);
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        double e1 = rng.uniform(-0.2, 0.2), e2 = rng.uniform(-0.2, 0.2);
        double x = rng.uniform(1.5, 2.5), t = rng.uniform(0.2, 1.5), u = rng.uniform(0.5, 2.0);
        FlowPointImage one = apply_flow(flow, p, e1 + e2, x, t, u);
        FlowPointImage two = apply_flow(flow, p, e1, x, t, u);
        two = apply_flow(flow, p, e2, two.x, two.t, two.u);
        worst = std::max({worst, std::abs(one.x - two.x), std::abs(one.t - two.t),
                          std::abs(one.u - two.u)});
      }
      g.require(worst <= 1e-12, std::string(id) + " closure " + std::to_string(worst));
    }

    const std::vector<double> eps{-0.5, -0.1, 0.1, 0.5};
    SolutionInstance triv = instantiate(cat.solution("trivial-potential"));
    SolutionInstance i2 = instantiate(cat.solution("i2-exponential"));
    SolutionInstance dip =
        instantiate(cat.solution("dipole"), pext, {{"k1", 1.0}}, Region{1.5, 2.0, 1.0, 2.0});
    auto gate = [&](const char* gid, const SolutionInstance& inst) {
      VerificationReport rep =
          check_symmetry(inst.params, cat.generator(gid), inst, eps, 25, 25, 1e-8);
      g.require(rep.pass, std::string(gid) + " on " + inst.spec->id + " max=" +
                              std::to_string(rep.max_abs_residual));
    };
    gate("v1", triv);
    gate("v1", i2);
    gate("v2", triv);
    gate("v2", dip);
    gate("v3", i2);
    gate("v3", dip);
    gate("v4p", dip);
  });

  // 6. Determining equations: exact families within 1e-9 at 100 seeded points,
  //    perturbed family bounded away from zero at the witness point.
  run("C6 determining equations", 5.0, [](Gate& g) {
    const auto& cat = Catalog::get();
    struct Fam {
      const char* id;
      double C;
    };
    for (Fam fam : {Fam{"nc-c2-gen", 2.0}, Fam{"nc-c53-gen", 5.0 / 3.0}, Fam{"nc-cm1-gen", -1.0}}) {
      PdeParams p(Rational(1, 2), fam.C, 0.0);
      const GeneratorSpec& gen = cat.generator(fam.id);
      SplitMix64 rng(86420);
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        double x = rng.uniform(0.5, 3.0), t = rng.uniform(0.0, 2.0), u = rng.uniform(0.2, 3.0);
        worst = std::max(worst, determining_residuals(p, gen, x, t, u).max_abs());
      }
      g.require(worst <= 1e-9, std::string(fam.id) + " " + std::to_string(worst));
    }
    {
      PdeParams p(Rational(1, 2), 2.0, 0.0);
      auto pf = [](double, double, double) { return xu_const(1.0); };
      auto rf = [&p](double x, double, double u) {
        XUJet W = xu_x(x) + p.lambda, U = xu_u(u);
        return 2.1 * sqrt(U) / (W * W);
      };
      double witness = determining_residuals(p, pf, rf, 1.0, 0.5, 1.0).max_abs();
      g.require(witness >= 1e-3, "perturbed witness only " + std::to_string(witness));
    }
  });

  // 7. Potential system at quad_tol = 1e-10, plus the closed-form potential.
  run("C7 potential system", 20.0, [](Gate& g) {
    const double quad_tol = 1e-10;
    {
      SolutionInstance i2 = instantiate(Catalog::get().solution("i2-exponential"));
      ScalarField f = i2.field();
      PotentialField pot = build_potential(i2.params, f, 1.0, 0.0, i2.domain, quad_tol, true);
      VerificationReport rep =
          check_auxiliary_system(i2.params, f, pot, i2.domain, 20, 20, 10.0 * quad_tol);
      g.require(rep.pass, "auxiliary residual " + std::to_string(rep.max_abs_residual));
      double worst_path = 0;
      for (double x : {1.2, 1.6, 2.0})
        for (double t : {0.4, 1.0})
          worst_path = std::max(worst_path, std::abs(pot.v(x, t) - pot.v_t_first(x, t)));
      g.require(worst_path <= 10.0 * quad_tol, "path defect " + std::to_string(worst_path));
    }
    {
      SolutionInstance triv = instantiate(Catalog::get().solution("trivial-potential"));
      ScalarField f = triv.field();
      PotentialField pot = build_potential(triv.params, f, 1.0, 0.0, triv.domain, quad_tol, true);
      double worst = 0;
      for (double x : {1.0, 1.25, 1.5, 1.75, 2.0})
        for (double t : {0.0, 0.5, 1.0})
          worst = std::max(worst, std::abs(pot.v(x, t) - (std::sqrt(x) - 1.0)));
      g.require(worst <= 1e-9, "closed-form potential defect " + std::to_string(worst));
    }
  });

  // 8. Cross-validation: second-order convergence on the kink solution.
  run("C8 cross-validation", 30.0, [](Gate& g) {
    PdeParams p(Rational(1, 2), 2.0, 2.0);
    SolutionInstance inst = instantiate(Catalog::get().solution("nc-c2-solution"), p,
                                        {{"k", 1.0}, {"k2", 0.0}, {"k3", 1.0}},
                                        Region{1.0, 2.0, 0.0, 0.5});
    ConvergenceTable tab = cross_validate(p, inst, {100, 200, 400}, 0.25, 1e-10);
    g.require(tab.orders_within(1.8, 2.2), "orders outside [1.8, 2.2]");
    for (const auto& r : tab.rows)
      if (std::isfinite(r.order))
        g.require(r.order >= 1.8 && r.order <= 2.2,
                  "order " + std::to_string(r.order) + " at " + std::to_string(r.cells));
  });

  // 9. Jet correctness against central finite differences on the CLI grammar.
  run("C9 jet correctness", 5.0, [](Gate& g) {
    SplitMix64 rng(20240814);
    const double h = 1e-4;
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      Expr e = random_expression(rng);
      double x = 0.8 + 0.05 * k, t = 1.6 - 0.04 * k;
      Jet2 j = e.eval(x, t);
      double vx = (e.value(x + h, t) - e.value(x - h, t)) / (2 * h);
      double vxx = (e.value(x + h, t) - 2 * e.value(x, t) + e.value(x - h, t)) / (h * h);
      double vt = (e.value(x, t + h) - e.value(x, t - h)) / (2 * h);
      worst = std::max({worst, std::abs(j.vx - vx), std::abs(j.vxx - vxx), std::abs(j.vt - vt)});
    }
    g.require(worst <= 1e-6, "max deviation " + std::to_string(worst));
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
