#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dsw/cylinder.hpp"
#include "dsw/problem.hpp"

namespace dsw {

// Convexity defect b[v,w] = beta/(beta+1) (w^(beta+1) - v^(beta+1))
// + v (v^beta - w^beta), nonnegative and comparable to
// |v^((beta+1)/2) - w^((beta+1)/2)|^2. Near the diagonal the terms cancel, so
// the evaluation switches to a log1p/expm1 form that keeps full relative
// accuracy. Throws DomainError on negative arguments.
double boundary_quantity(double v, double w, double beta);

struct BoundaryBounds {
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

// Extremes of b[v,w] / |v^((beta+1)/2) - w^((beta+1)/2)|^2 over seeded random
// pairs in [0,10]^2. Pairs too close to the diagonal for the ratio to be
// numerically meaningful are redrawn (the diagonal itself is excluded).
BoundaryBounds check_boundary_bounds(int samples, double beta, std::uint64_t seed = 0);

// C^1 space-time cutoff: 1 on the inner cylinder, 0 outside the outer one,
// cubic smoothstep profiles in the radius and in |t - t_o|. The transition
// slopes satisfy |grad phi| <= 2/(R - rho) and |d_t phi| <= 2/(theta - s).
struct CutoffFunction {
  Cylinder inner;
  Cylinder outer;

  double value(std::array<double, 2> x, double t) const;
  std::array<double, 2> gradient(std::array<double, 2> x, double t) const;
  double time_derivative(std::array<double, 2> x, double t) const;
};

// Validates strict nesting of two concentric cylinders; throws GeometryError.
CutoffFunction build_cutoff(const Cylinder& inner, const Cylinder& outer);

// Both sides of the truncation energy inequality on nested cylinders, with
// the unknown constant omitted from the right-hand side.
struct EnergyReport {
  double lhs_gradient_term = 0.0;
  double lhs_sup_term = 0.0;
  double rhs_cutoff_gradient_term = 0.0;  // (v^b - k^b)_+^(g+1) / (R-rho)^(g+1)
  double rhs_cutoff_time_term = 0.0;      // truncated-square term / (theta-s)
  double rhs_v_power_term = 0.0;          // v^(b(g+1)) over {v > k}
  double rhs_truncation_term = 0.0;       // (v^b - k^b)_+^(g+1) over {v > k}
  double rhs_source_term = 0.0;           // |f|^((g+1)/g) over {v > k}
  double rhs_topography_term = 0.0;       // |grad z|^(b(g+1)) over {v > k}
  double empirical_ratio = 0.0;

  double lhs_total() const { return lhs_gradient_term + lhs_sup_term; }
  double rhs_total() const {
    return rhs_cutoff_gradient_term + rhs_cutoff_time_term + rhs_v_power_term +
           rhs_truncation_term + rhs_source_term + rhs_topography_term;
  }
  nlohmann::json to_json() const;
};

// Midpoint-quadrature evaluation of the energy inequality at level k over the
// inner cylinder Q_(rho,s) and outer cylinder Q_(R,theta). Throws
// GeometryError for bad cylinders and QuadratureError when fewer than 4
// stored slices resolve a window.
EnergyReport caccioppoli_report(const SpaceTimeSolution& sol, const Cylinder& inner,
                                const Cylinder& outer, double k);

// | integral of A . grad(phi) - v d_t(phi) - f phi | over the space-time
// domain, with the discrete flux of the solution, the cell-difference
// gradient of phi (the summation-by-parts dual of the divergence), and exact
// per-slice time integration of the v d_t(phi) term. Vanishes on steady
// states and shrinks with the step size on evolving ones.
double weak_residual(const SpaceTimeSolution& sol, const CutoffFunction& phi);

}  // namespace dsw
