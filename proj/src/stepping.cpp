#include "dsw/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsw/errors.hpp"
#include "dsw/flux.hpp"

namespace dsw {

namespace {

// Face geometry shared by stable_dt and the semi-implicit coefficients:
// visits every flux-carrying face with the face average of v, the normal and
// tangential parts of grad u, and the face orientation.
template <typename Visit>
void for_each_active_face(const ScalarField& v, const ScalarField& z,
                          BoundaryCondition bc, Visit&& visit) {
  const Grid& g = v.grid;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 0.0;
  const bool dirichlet = bc == BoundaryCondition::DirichletZeroV;

  std::vector<double> u(v.values.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = v.values[k] + z.values[k];

  auto dy_at = [&](int i, int j) {
    if (j == 0) return (u[g.idx(i, 1)] - u[g.idx(i, 0)]) / hy;
    if (j == ny - 1) return (u[g.idx(i, j)] - u[g.idx(i, j - 1)]) / hy;
    return (u[g.idx(i, j + 1)] - u[g.idx(i, j - 1)]) / (2.0 * hy);
  };
  auto dx_at = [&](int i, int j) {
    if (i == 0) return (u[g.idx(1, j)] - u[g.idx(0, j)]) / hx;
    if (i == nx - 1) return (u[g.idx(i, j)] - u[g.idx(i - 1, j)]) / hx;
    return (u[g.idx(i + 1, j)] - u[g.idx(i - 1, j)]) / (2.0 * hx);
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (i == 0 || i == nx) {
        if (!dirichlet) continue;
        int c = i == 0 ? 0 : nx - 1;
        double vc = v.values[g.idx(c, j)];
        visit(0, i, j, 0.5 * vc, (i == 0 ? vc : -vc) / hx, 0.0);
      } else {
        std::size_t L = g.idx(i - 1, j), R = g.idx(i, j);
        double dut = g.n == 2 ? 0.5 * (dy_at(i - 1, j) + dy_at(i, j)) : 0.0;
        visit(0, i, j, 0.5 * (v.values[L] + v.values[R]), (u[R] - u[L]) / hx, dut);
      }
    }
  }
  if (g.n == 2) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (j == 0 || j == ny) {
          if (!dirichlet) continue;
          int c = j == 0 ? 0 : ny - 1;
          double vc = v.values[g.idx(i, c)];
          visit(1, i, j, 0.5 * vc, (j == 0 ? vc : -vc) / hy, 0.0);
        } else {
          std::size_t L = g.idx(i, j - 1), R = g.idx(i, j);
          double dut = 0.5 * (dx_at(i, j - 1) + dx_at(i, j));
          visit(1, i, j, 0.5 * (v.values[L] + v.values[R]), (u[R] - u[L]) / hy, dut);
        }
      }
    }
  }
}

struct FaceCoefficients {
  std::vector<double> x;  // (nx+1)*ny, zero on inactive faces
  std::vector<double> y;  // nx*(ny+1)
};

// Scalar face diffusivity D with A . n = D * (du/h) across each face,
// evaluated at the frozen state: D = beta^(1-gamma) vbar^(beta-1)
// (|G|^2 + eps^2)^((gamma-1)/2).
FaceCoefficients frozen_coefficients(const ScalarField& v, const Problem& p) {
  const Grid& g = v.grid;
  FaceCoefficients D;
  D.x.assign(static_cast<std::size_t>(g.nx() + 1) * g.ny(), 0.0);
  if (g.n == 2) D.y.assign(static_cast<std::size_t>(g.nx()) * (g.ny() + 1), 0.0);
  const double beta = p.params.beta, gamma = p.params.gamma;
  const double eps2 = p.eps * p.eps;
  for_each_active_face(v, p.topography, p.boundary,
                       [&](int axis, int i, int j, double vbar, double dun, double dut) {
    if (vbar <= 0.0) return;
    const double gcoef = beta * std::pow(vbar, beta - 1.0);
    const double g2 = gcoef * gcoef * (dun * dun + dut * dut);
    const double reg = g2 + eps2;
    if (reg == 0.0) return;
    const double d = std::pow(beta, -gamma) * std::pow(reg, 0.5 * (gamma - 1.0)) * gcoef;
    if (axis == 0)
      D.x[static_cast<std::size_t>(j) * (g.nx() + 1) + i] = d;
    else
      D.y[static_cast<std::size_t>(j) * g.nx() + i] = d;
  });
  return D;
}

// w -> w - dt * div(D grad w) with the ghost conventions of the boundary
// condition (Dirichlet ghost value 0; zero-flux faces have D = 0).
void apply_implicit_operator(const std::vector<double>& w, const FaceCoefficients& D,
                             const Problem& p, double dt, std::vector<double>& out) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 1.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.idx(i, j);
      double div = 0.0;
      {
        const double dl = D.x[static_cast<std::size_t>(j) * (nx + 1) + i];
        const double dr = D.x[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
        const double wl = i > 0 ? w[g.idx(i - 1, j)] : 0.0;
        const double wr = i < nx - 1 ? w[g.idx(i + 1, j)] : 0.0;
        div += (dr * (wr - w[c]) / hx - dl * (w[c] - wl) / hx) / hx;
      }
      if (g.n == 2) {
        const double db = D.y[static_cast<std::size_t>(j) * nx + i];
        const double dtp = D.y[static_cast<std::size_t>(j + 1) * nx + i];
        const double wb = j > 0 ? w[g.idx(i, j - 1)] : 0.0;
        const double wt = j < ny - 1 ? w[g.idx(i, j + 1)] : 0.0;
        div += (dtp * (wt - w[c]) / hy - db * (w[c] - wb) / hy) / hy;
      }
      out[c] = w[c] - dt * div;
    }
  }
}

// Constant part of the lagged flux: dt * div(D grad z) with the same ghosts
// (Dirichlet ghost topography equals the boundary cell, so the boundary face
// contributes nothing).
void topography_rhs(const FaceCoefficients& D, const Problem& p, double dt,
                    std::vector<double>& out) {
  const Grid& g = p.grid;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 1.0;
  const std::vector<double>& z = p.topography.values;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.idx(i, j);
      double div = 0.0;
      {
        const double dl = D.x[static_cast<std::size_t>(j) * (nx + 1) + i];
        const double dr = D.x[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
        const double zl = i > 0 ? z[g.idx(i - 1, j)] : z[c];
        const double zr = i < nx - 1 ? z[g.idx(i + 1, j)] : z[c];
        div += (dr * (zr - z[c]) / hx - dl * (z[c] - zl) / hx) / hx;
      }
      if (g.n == 2) {
        const double db = D.y[static_cast<std::size_t>(j) * nx + i];
        const double dtp = D.y[static_cast<std::size_t>(j + 1) * nx + i];
        const double zb = j > 0 ? z[g.idx(i, j - 1)] : z[c];
        const double zt = j < ny - 1 ? z[g.idx(i, j + 1)] : z[c];
        div += (dtp * (zt - z[c]) / hy - db * (z[c] - zb) / hy) / hy;
      }
      out[c] += dt * div;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) s += (long double)a[k] * b[k];
  return static_cast<double>(s);
}

}  // namespace

double stable_dt(const ScalarField& v, const Problem& problem, const StepControl& ctrl) {
  const double alpha = problem.params.alpha, gamma = problem.params.gamma;
  const double eps2 = problem.eps * problem.eps;
  double dmax = 0.0;
  for_each_active_face(v, problem.topography, problem.boundary,
                       [&](int, int, int, double vbar, double dun, double dut) {
    if (vbar <= 0.0) return;
    const double g2 = dun * dun + dut * dut + eps2;
    if (g2 == 0.0) return;
    dmax = std::max(dmax, std::pow(vbar, alpha) * std::pow(g2, 0.5 * (gamma - 1.0)));
  });
  const double h = problem.grid.min_spacing();
  const double dt = ctrl.cfl * h * h / (2.0 * problem.grid.n * dmax + 1e-300);
  return std::clamp(dt, ctrl.dt_min, ctrl.dt_max);
}

StepResult step(const ScalarField& v, double t, double dt, const Problem& problem,
                const StepControl& ctrl) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  const Grid& g = problem.grid;
  const double vol = g.cell_volume();

  StepResult res;
  res.state = v;

  if (ctrl.scheme == Scheme::Explicit) {
    ScalarField L = spatial_operator(v, problem);
    long double clipped = 0.0L;
    for (std::size_t k = 0; k < v.values.size(); ++k) {
      double pre = v.values[k] + dt * (L.values[k] + problem.source.at(t, k));
      if (pre < 0.0) {
        clipped += -pre;
        pre = 0.0;
      }
      res.state.values[k] = pre;
    }
    res.clipped_mass = static_cast<double>(clipped) * vol;
    return res;
  }

  // Semi-implicit: (I - dt div D grad) v' = v + dt div(D grad z) + dt f with
  // D frozen at the step start.
  FaceCoefficients D = frozen_coefficients(v, problem);
  const std::size_t nc = v.values.size();
  std::vector<double> rhs = v.values;
  for (std::size_t k = 0; k < nc; ++k) rhs[k] += dt * problem.source.at(t, k);
  topography_rhs(D, problem, dt, rhs);

  std::vector<double> x = v.values;  // initial guess: previous state
  std::vector<double> r(nc), p(nc), Ap(nc);
  apply_implicit_operator(x, D, problem, dt, Ap);
  for (std::size_t k = 0; k < nc; ++k) r[k] = rhs[k] - Ap[k];
  p = r;
  double rr = dot(r, r);
  const double rhs_norm = std::sqrt(std::max(dot(rhs, rhs), 1e-300));
  const double tol = ctrl.newton_tol * rhs_norm;
  int it = 0;
  while (std::sqrt(rr) > tol) {
    if (it >= ctrl.max_newton_iters)
      throw ConvergenceError("semi-implicit solve exceeded max_newton_iters");
    apply_implicit_operator(p, D, problem, dt, Ap);
    const double a = rr / dot(p, Ap);
    for (std::size_t k = 0; k < nc; ++k) {
      x[k] += a * p[k];
      r[k] -= a * Ap[k];
    }
    const double rr_new = dot(r, r);
    const double b = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < nc; ++k) p[k] = r[k] + b * p[k];
    ++it;
  }
  res.iterations = it;

  long double clipped = 0.0L;
  for (std::size_t k = 0; k < nc; ++k) {
    double val = x[k];
    if (val < 0.0) {
      clipped += -val;
      val = 0.0;
    }
    res.state.values[k] = val;
  }
  res.clipped_mass = static_cast<double>(clipped) * vol;
  return res;
}

SpaceTimeSolution run(const Problem& problem, const StepControl& ctrl) {
  {
    std::vector<std::string> bad = validate_problem(problem);
    if (!bad.empty()) {
      std::string all = "run: invalid problem:";
      for (const std::string& s : bad) all += " [" + s + "]";
      throw ValidationError(all);
    }
  }

  SpaceTimeSolution sol;
  sol.problem = problem;
  sol.times.push_back(0.0);
  sol.states.push_back(problem.initial_depth);

  const double T = problem.horizon;
  if (T <= 0.0) return sol;

  ScalarField v = problem.initial_depth;
  double t = 0.0;
  long double clipped_total = 0.0L;
  long long step_index = 0;
  const int cadence = std::max(1, ctrl.store_every);

  while (t < T) {
    double dt = ctrl.scheme == Scheme::Explicit ? stable_dt(v, problem, ctrl) : ctrl.dt_max;
    bool last = false;
    if (t + dt >= T || (T - t) < dt * (1.0 + 1e-9)) {
      dt = T - t;
      last = true;
    }
    StepResult res = step(v, t, dt, problem, ctrl);
    v = std::move(res.state);
    t = last ? T : t + dt;
    clipped_total += res.clipped_mass;
    ++step_index;

    StepDiagnostics d;
    d.t = t;
    d.dt = dt;
    d.mass = field_mass(v);
    d.clipped_mass = res.clipped_mass;
    d.max_depth = field_max(v);
    sol.diagnostics.push_back(d);

    if (last || step_index % cadence == 0) {
      sol.times.push_back(t);
      sol.states.push_back(v);
    }
  }
  sol.total_clipped_mass = static_cast<double>(clipped_total);
  return sol;
}

}  // namespace dsw
