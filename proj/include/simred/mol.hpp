#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "simred/catalog.hpp"
#include "simred/integrate.hpp"
#include "simred/params.hpp"

namespace simred {

// Finite-volume method-of-lines solver for the conserved form
//   (x+l) u_t = D_x [ (x+l)(u^n)_x + (C-1) u^n ],
// with Dirichlet data at the domain faces.  Centered face gradients and
// arithmetic face averages of u^n give second-order accuracy on smooth
// positive solutions; the boundary faces use a three-point one-sided
// gradient of the same order.

using BoundaryFn = std::function<double(double t)>;

struct SpatialGrid {
  double a{0}, b{1};
  int cells{100};
};

struct MolOptions {
  Dopri5Options dopri;
  std::vector<double> t_out;  // additional output times strictly inside (0, t_end)
};

struct GridField {
  std::vector<double> x;                // cell centers
  std::vector<double> t;                // output times
  std::vector<std::vector<double>> u;   // u[k][i] at time t[k]
  double lambda{0};
  IntegStats stats;

  // Discrete conservation bookkeeping: cell-mass sum(x_i+l) u_i dx and the
  // time integrals of the boundary fluxes, advanced by the same integrator.
  double dx{0};
  double mass_begin{0}, mass_end{0};
  double flux_time_integral_left{0}, flux_time_integral_right{0};

  double conservation_defect() const {
    return (mass_end - mass_begin) - (flux_time_integral_right - flux_time_integral_left);
  }
};

namespace mol_detail {

struct Rhs {
  const PdeParams& params;
  const BoundaryFn& left;
  const BoundaryFn& right;
  double a, b, dx;
  int n;

  // u^n with a rejection signal: a non-positive cell value under a
  // fractional or negative exponent marks the stage as invalid, which the
  // step controller treats as a failed step.
  bool pw(double u, double& out) const {
    if ((params.fractional_n() || params.n.num < 0) && u <= 0.0) return false;
    out = r_pow(u, params.n);
    return true;
  }

  bool operator()(double t, const std::vector<double>& s, std::vector<double>& ds) const {
    const double C = params.C, lam = params.lambda;
    thread_local std::vector<double> un;
    un.resize(n);
    for (int i = 0; i < n; ++i)
      if (!pw(s[i], un[i])) return false;
    double gl, gr, gln, grn;
    gl = left(t);
    gr = right(t);
    if (!pw(gl, gln) || !pw(gr, grn)) return false;

    auto face_flux = [&](int i) {
      // face i sits at x = a + i dx
      double xf = a + i * dx;
      double w = xf + lam;
      if (i == 0) {
        // second-order one-sided gradient in difference form, so constants
        // produce a bit-exact zero
        double grad = (8.0 / 3.0 * (un[0] - gln) + 1.0 / 3.0 * (un[0] - un[1])) / dx;
        return w * grad + (C - 1.0) * gln;
      }
      if (i == n) {
        double grad = (8.0 / 3.0 * (grn - un[n - 1]) + 1.0 / 3.0 * (un[n - 2] - un[n - 1])) / dx;
        return w * grad + (C - 1.0) * grn;
      }
      double grad = (un[i] - un[i - 1]) / dx;
      return w * grad + (C - 1.0) * 0.5 * (un[i - 1] + un[i]);
    };

    double Fl = face_flux(0);
    for (int i = 0; i < n; ++i) {
      double Fr = face_flux(i + 1);
      double xc = a + (i + 0.5) * dx;
      ds[i] = (Fr - Fl) / ((xc + lam) * dx);
      Fl = Fr;
    }
    ds[n] = face_flux(0);      // time integral of the left boundary flux
    ds[n + 1] = face_flux(n);  // time integral of the right boundary flux
    return true;
  }
};

}  // namespace mol_detail

inline GridField solve_mol(const PdeParams& params, const std::function<double(double)>& initial,
                           const BoundaryFn& left_bc, const BoundaryFn& right_bc,
                           const SpatialGrid& grid, double t_end, double tol,
                           const MolOptions& opts = {}) {
  if (!(tol >= 1e-13 && tol <= 1e-4))
    raise(ErrorKind::ConfigError, "tolerance must lie in [1e-13, 1e-4]");
  if (grid.cells < 4) raise(ErrorKind::ConfigError, "grid needs at least 4 cells");
  if (grid.a + params.lambda <= 0.0)
    raise(ErrorKind::DomainViolation, "grid must satisfy x + lambda > 0");

  GridField out;
  out.lambda = params.lambda;
  out.dx = (grid.b - grid.a) / grid.cells;
  out.x.resize(grid.cells);
  for (int i = 0; i < grid.cells; ++i) out.x[i] = grid.a + (i + 0.5) * out.dx;

  std::vector<double> s(grid.cells + 2, 0.0);
  for (int i = 0; i < grid.cells; ++i) {
    s[i] = initial(out.x[i]);
    if (s[i] <= 0.0) raise(ErrorKind::PositivityLoss, "initial data must be strictly positive");
  }
  if (left_bc(0.0) <= 0.0 || right_bc(0.0) <= 0.0)
    raise(ErrorKind::PositivityLoss, "boundary data must be strictly positive");

  auto mass = [&](const std::vector<double>& v) {
    double m = 0;
    for (int i = 0; i < grid.cells; ++i) m += (out.x[i] + params.lambda) * v[i] * out.dx;
    return m;
  };
  out.mass_begin = mass(s);

  mol_detail::Rhs rhs{params, left_bc, right_bc, grid.a, grid.b, out.dx, grid.cells};
  auto sys = [&rhs](double t, const std::vector<double>& y, std::vector<double>& dy) {
    if (!rhs(t, y, dy)) std::fill(dy.begin(), dy.end(), std::nan(""));
  };
  auto guard = [&](double, const std::vector<double>& y) {
    if (params.fractional_n() || params.n.num < 0)
      for (int i = 0; i < grid.cells; ++i)
        if (y[i] <= 0.0) raise(ErrorKind::PositivityLoss, "cell value lost positivity");
  };

  std::vector<double> times{0.0};
  for (double tq : opts.t_out)
    if (tq > 0.0 && tq < t_end) times.push_back(tq);
  times.push_back(t_end);
  std::sort(times.begin(), times.end());

  out.t.push_back(0.0);
  out.u.emplace_back(s.begin(), s.begin() + grid.cells);
  for (std::size_t k = 1; k < times.size(); ++k) {
    IntegStats st = dopri5(sys, times[k - 1], s, times[k], tol, opts.dopri, nullptr, nullptr,
                           nullptr, guard);
    out.stats.naccepted += st.naccepted;
    out.stats.nrejected += st.nrejected;
    out.stats.nfev += st.nfev;
    out.t.push_back(times[k]);
    out.u.emplace_back(s.begin(), s.begin() + grid.cells);
  }
  out.mass_end = mass(s);
  out.flux_time_integral_left = s[grid.cells];
  out.flux_time_integral_right = s[grid.cells + 1];
  return out;
}

// Convenience wrapper: initial and boundary data sampled from a reference
// solution on its own domain.
inline GridField solve_mol_from_reference(const SolutionInstance& ref, int cells, double t_end,
                                          double tol, const MolOptions& opts = {}) {
  const Region& d = ref.domain;
  double t0 = d.t0;
  SpatialGrid grid{d.x0, d.x1, cells};
  auto initial = [&ref, t0](double x) { return ref.eval(x, t0).v; };
  BoundaryFn lbc = [&ref, t0, &d](double t) { return ref.eval(d.x0, t0 + t).v; };
  BoundaryFn rbc = [&ref, t0, &d](double t) { return ref.eval(d.x1, t0 + t).v; };
  return solve_mol(ref.params, initial, lbc, rbc, grid, t_end, tol, opts);
}

// ---------------------------------------------------------------------------
// Grid-refinement study against a verified reference solution.

struct ConvergenceRow {
  int cells{0};
  double linf{0}, l2{0};
  double order{std::nan("")};  // log2 ratio vs the previous row; NaN when undefined
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  bool orders_within(double lo, double hi) const {
    bool any = false;
    for (const auto& r : rows)
      if (std::isfinite(r.order)) {
        any = true;
        if (r.order < lo || r.order > hi) return false;
      }
    return any;
  }
};

inline ConvergenceTable cross_validate(const PdeParams& params, const SolutionInstance& reference,
                                       const std::vector<int>& grids, double t_end, double tol,
                                       const MolOptions& opts = {}) {
  if (!reference.spec->verified_against_pde)
    raise(ErrorKind::UnverifiedField, "cross-validation needs a verified reference");
  (void)params;
  ConvergenceTable table;
  double prev_linf = 0;
  int prev_cells = 0;
  for (int cells : grids) {
    GridField g = solve_mol_from_reference(reference, cells, t_end, tol, opts);
    ConvergenceRow row;
    row.cells = cells;
    const std::vector<double>& uh = g.u.back();
    double t_ref = reference.domain.t0 + t_end;
    double l2 = 0;
    for (int i = 0; i < cells; ++i) {
      double e = std::abs(uh[i] - reference.eval(g.x[i], t_ref).v);
      row.linf = std::max(row.linf, e);
      l2 += e * e * g.dx;
    }
    row.l2 = std::sqrt(l2);
    if (prev_cells > 0 && row.linf > 1e-12 && prev_linf > 1e-12)
      row.order = std::log(prev_linf / row.linf) / std::log(double(cells) / prev_cells);
    prev_linf = row.linf;
    prev_cells = cells;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace simred
