#include "dsw/energy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dsw/errors.hpp"
#include "dsw/flux.hpp"

namespace dsw {

namespace {

double plain_boundary_quantity(double v, double w, double beta) {
  return beta / (beta + 1.0) * (std::pow(w, beta + 1.0) - std::pow(v, beta + 1.0)) +
         v * (std::pow(v, beta) - std::pow(w, beta));
}

}  // namespace

double boundary_quantity(double v, double w, double beta) {
  if (v < 0.0 || w < 0.0) throw DomainError("boundary_quantity needs nonnegative arguments");
  if (!(beta > 0.0)) throw DomainError("boundary_quantity needs beta > 0");
  if (v == w) return 0.0;
  if (v == 0.0 || w == 0.0 || std::fabs(w - v) > 0.25 * std::max(v, w))
    return plain_boundary_quantity(v, w, beta);
  // b = v^(beta+1) [ beta/(beta+1) ((w/v)^(beta+1) - 1) - ((w/v)^beta - 1) ]
  const double r = (w - v) / v;
  const double L = std::log1p(r);
  const double t1 = std::expm1((beta + 1.0) * L);
  const double t2 = std::expm1(beta * L);
  return std::pow(v, beta + 1.0) * (beta / (beta + 1.0) * t1 - t2);
}

BoundaryBounds check_boundary_bounds(int samples, double beta, std::uint64_t seed) {
  if (samples < 1) throw DomainError("check_boundary_bounds needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  const double p = 0.5 * (beta + 1.0);

  BoundaryBounds out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = 0.0;
  for (int s = 0; s < samples; ++s) {
    double v, w;
    do {
      v = uni(rng);
      w = uni(rng);
    } while (std::fabs(v - w) <= 1e-2 * std::max({1.0, v, w}));
    double diff;  // v^p - w^p, via expm1 when both are positive
    if (v > 0.0 && w > 0.0)
      diff = std::pow(v, p) * std::expm1(p * std::log(w / v));
    else
      diff = std::pow(w, p) - std::pow(v, p);
    const double ratio = boundary_quantity(v, w, beta) / (diff * diff);
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

namespace {

// Cubic smoothstep ramp: 1 at r <= a, 0 at r >= b, C^1 across both knots.
double ramp(double r, double a, double b) {
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  const double s = (r - a) / (b - a);
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

double ramp_slope(double r, double a, double b) {
  if (r <= a || r >= b) return 0.0;
  const double s = (r - a) / (b - a);
  return -6.0 * s * (1.0 - s) / (b - a);
}

}  // namespace

double CutoffFunction::value(std::array<double, 2> x, double t) const {
  const double dx = x[0] - outer.center[0];
  const double dy = x[1] - outer.center[1];
  const double r = std::sqrt(dx * dx + dy * dy);
  return ramp(r, inner.rho, outer.rho) *
         ramp(std::fabs(t - outer.t_center), inner.theta, outer.theta);
}

std::array<double, 2> CutoffFunction::gradient(std::array<double, 2> x, double t) const {
  const double dx = x[0] - outer.center[0];
  const double dy = x[1] - outer.center[1];
  const double r = std::sqrt(dx * dx + dy * dy);
  if (r == 0.0) return {0.0, 0.0};
  const double slope = ramp_slope(r, inner.rho, outer.rho) *
                       ramp(std::fabs(t - outer.t_center), inner.theta, outer.theta);
  return {slope * dx / r, slope * dy / r};
}

double CutoffFunction::time_derivative(std::array<double, 2> x, double t) const {
  const double dx = x[0] - outer.center[0];
  const double dy = x[1] - outer.center[1];
  const double r = std::sqrt(dx * dx + dy * dy);
  const double tau = t - outer.t_center;
  const double sign = tau >= 0.0 ? 1.0 : -1.0;
  return ramp(r, inner.rho, outer.rho) *
         ramp_slope(std::fabs(tau), inner.theta, outer.theta) * sign;
}

CutoffFunction build_cutoff(const Cylinder& inner, const Cylinder& outer) {
  const double scale = std::max({1.0, std::fabs(outer.center[0]), std::fabs(outer.center[1]),
                                 std::fabs(outer.t_center)});
  if (std::fabs(inner.center[0] - outer.center[0]) > 1e-12 * scale ||
      std::fabs(inner.center[1] - outer.center[1]) > 1e-12 * scale ||
      std::fabs(inner.t_center - outer.t_center) > 1e-12 * scale)
    throw GeometryError("cutoff cylinders must share their center");
  if (!(inner.rho > 0.0 && inner.rho < outer.rho))
    throw GeometryError("cutoff needs 0 < rho < R");
  if (!(inner.theta > 0.0 && inner.theta < outer.theta))
    throw GeometryError("cutoff needs 0 < s < theta");
  return CutoffFunction{inner, outer};
}

nlohmann::json EnergyReport::to_json() const {
  return nlohmann::json{{"lhs_gradient_term", lhs_gradient_term},
                        {"lhs_sup_term", lhs_sup_term},
                        {"rhs_cutoff_gradient_term", rhs_cutoff_gradient_term},
                        {"rhs_cutoff_time_term", rhs_cutoff_time_term},
                        {"rhs_v_power_term", rhs_v_power_term},
                        {"rhs_truncation_term", rhs_truncation_term},
                        {"rhs_source_term", rhs_source_term},
                        {"rhs_topography_term", rhs_topography_term},
                        {"empirical_ratio", empirical_ratio}};
}

EnergyReport caccioppoli_report(const SpaceTimeSolution& sol, const Cylinder& inner,
                                const Cylinder& outer, double k) {
  if (k < 0.0) throw DomainError("caccioppoli_report needs k >= 0");
  if (!(inner.rho < outer.rho) || !(inner.theta < outer.theta))
    throw GeometryError("caccioppoli_report needs rho < R and s < theta");
  ResolvedCylinder rin = resolve(inner, sol);
  ResolvedCylinder rout = resolve(outer, sol);
  if (rin.slice_count() < 4 || rout.slice_count() < 4)
    throw QuadratureError("stored cadence resolves a cylinder with fewer than 4 slices");

  const Parameters& prm = sol.problem.params;
  const Grid& g = sol.problem.grid;
  const double beta = prm.beta, gamma = prm.gamma;
  const double vol = g.cell_volume();
  const double kbeta = k == 0.0 ? 0.0 : std::pow(k, beta);
  const double khalf = k == 0.0 ? 0.0 : std::pow(k, 0.5 * (beta + 1.0));
  const double wgrad = std::pow(outer.rho - inner.rho, -(gamma + 1.0));
  const double wtime = 1.0 / (outer.theta - inner.theta);

  std::vector<std::array<double, 2>> gradz = central_gradient(sol.problem.topography);

  EnergyReport rep;
  for (std::size_t j = rout.slice_begin; j < rout.slice_end; ++j) {
    const double len_out = rout.overlap(sol.times, j);
    const double len_in = rin.overlap(sol.times, j);
    if (len_out <= 0.0 && len_in <= 0.0) continue;
    const ScalarField& v = sol.states[j];

    ScalarField trunc = power_transform(v, beta);
    for (double& x : trunc.values) x = std::max(0.0, x - kbeta);
    std::vector<std::array<double, 2>> gradw = central_gradient(trunc);

    if (len_in > 0.0) {
      long double grad_acc = 0.0L, sup_acc = 0.0L;
      for (std::size_t c : rin.cells) {
        const double gw2 = gradw[c][0] * gradw[c][0] + gradw[c][1] * gradw[c][1];
        if (gw2 > 0.0) grad_acc += std::pow(gw2, 0.5 * (gamma + 1.0));
        const double th = std::max(0.0, std::pow(v.values[c], 0.5 * (beta + 1.0)) - khalf);
        sup_acc += th * th;
      }
      rep.lhs_gradient_term += static_cast<double>(grad_acc) * vol * len_in;
      rep.lhs_sup_term = std::max(rep.lhs_sup_term, static_cast<double>(sup_acc) * vol);
    }

    if (len_out > 0.0) {
      long double cg = 0.0L, ct = 0.0L, vp = 0.0L, tr = 0.0L, sf = 0.0L, tg = 0.0L;
      for (std::size_t c : rout.cells) {
        const double w = trunc.values[c];
        const double th = std::max(0.0, std::pow(v.values[c], 0.5 * (beta + 1.0)) - khalf);
        if (w > 0.0) cg += std::pow(w, gamma + 1.0);
        ct += th * th;
        if (v.values[c] > k) {
          vp += std::pow(v.values[c], beta * (gamma + 1.0));
          tr += std::pow(w, gamma + 1.0);
          const double fv = std::fabs(sol.problem.source.at(sol.times[j], c));
          if (fv > 0.0) sf += std::pow(fv, (gamma + 1.0) / gamma);
          const double gz2 = gradz[c][0] * gradz[c][0] + gradz[c][1] * gradz[c][1];
          if (gz2 > 0.0) tg += std::pow(gz2, 0.5 * beta * (gamma + 1.0));
        }
      }
      rep.rhs_cutoff_gradient_term += static_cast<double>(cg) * vol * len_out * wgrad;
      rep.rhs_cutoff_time_term += static_cast<double>(ct) * vol * len_out * wtime;
      rep.rhs_v_power_term += static_cast<double>(vp) * vol * len_out;
      rep.rhs_truncation_term += static_cast<double>(tr) * vol * len_out;
      rep.rhs_source_term += static_cast<double>(sf) * vol * len_out;
      rep.rhs_topography_term += static_cast<double>(tg) * vol * len_out;
    }
  }

  const double rhs = rep.rhs_total();
  if (rhs > 0.0)
    rep.empirical_ratio = rep.lhs_total() / rhs;
  else
    rep.empirical_ratio = rep.lhs_total() > 0.0
                              ? std::numeric_limits<double>::infinity()
                              : 0.0;
  return rep;
}

double weak_residual(const SpaceTimeSolution& sol, const CutoffFunction& phi) {
  const Grid& g = sol.problem.grid;
  const Parameters& prm = sol.problem.params;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 0.0;
  const double vol = g.cell_volume();
  const std::size_t K = sol.times.size();
  if (K < 2) return 0.0;

  long double flux_term = 0.0L;
  long double source_term = 0.0L;
  for (std::size_t j = 0; j + 1 < K; ++j) {
    const double dt = sol.times[j + 1] - sol.times[j];
    if (dt <= 0.0) continue;
    const double tm = 0.5 * (sol.times[j] + sol.times[j + 1]);
    FluxField G = combined_gradient(sol.states[j], sol.problem.topography, prm,
                                    sol.problem.boundary);
    FluxField A = vector_field_A(G, prm, sol.problem.eps);

    // Pair the normal flux component with the cell-difference gradient of
    // phi: the exact discrete dual of the divergence, so the residual
    // isolates the time-stepping defect instead of quadrature noise.
    long double slice = 0.0L;
    for (int jj = 0; jj < ny; ++jj) {
      const double yc = g.n == 2 ? g.y_center(jj) : 0.0;
      for (int i = 1; i < nx; ++i) {
        const double dphi =
            (phi.value({g.x_center(i), yc}, tm) - phi.value({g.x_center(i - 1), yc}, tm)) /
            hx;
        slice += A.xface[A.xidx(i, jj)][0] * dphi;
      }
    }
    if (g.n == 2) {
      for (int jj = 1; jj < ny; ++jj) {
        for (int i = 0; i < nx; ++i) {
          const double xc = g.x_center(i);
          const double dphi =
              (phi.value({xc, g.y_center(jj)}, tm) - phi.value({xc, g.y_center(jj - 1)}, tm)) /
              hy;
          slice += A.yface[A.yidx(i, jj)][1] * dphi;
        }
      }
    }
    flux_term += slice * vol * dt;

    if (!sol.problem.source.is_zero()) {
      long double fs = 0.0L;
      for (int jj = 0; jj < ny; ++jj)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c = g.idx(i, jj);
          fs += sol.problem.source.at(sol.times[j], c) *
                phi.value(g.cell_center(i, jj), tm);
        }
      source_term += fs * vol * dt;
    }
  }

  // Time term by parts summation: sum_j v_j (phi(t_{j+1}) - phi(t_j)) equals
  // sum of (v_{j-1} - v_j) phi(t_j) plus end terms, exact for the
  // piecewise-constant states and identically zero when v is steady.
  long double time_term = 0.0L;
  for (int jj = 0; jj < ny; ++jj) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.idx(i, jj);
      const std::array<double, 2> xc = g.cell_center(i, jj);
      long double acc = 0.0L;
      for (std::size_t j = 1; j + 1 < K; ++j)
        acc += (sol.states[j - 1].values[c] - sol.states[j].values[c]) *
               phi.value(xc, sol.times[j]);
      acc += sol.states[K - 2].values[c] * phi.value(xc, sol.times[K - 1]);
      acc -= sol.states[0].values[c] * phi.value(xc, sol.times[0]);
      time_term += acc;
    }
  }
  time_term *= vol;

  return std::fabs(static_cast<double>(flux_term - time_term - source_term));
}

}  // namespace dsw
