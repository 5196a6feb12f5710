#pragma once

#include "dsw/problem.hpp"

namespace dsw {

enum class Scheme { Explicit, SemiImplicit };

struct StepControl {
  double cfl = 0.4;       // fraction of the diffusive stability limit, in (0,1]
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  Scheme scheme = Scheme::Explicit;
  int max_newton_iters = 200;
  double newton_tol = 1e-10;
  int store_every = 1;  // snapshot cadence; diagnostics always cover every step
};

// Diffusive CFL bound: dt = clamp(cfl * h^2 / (2n * D_max + tiny), dt_min,
// dt_max) with D_max the largest face value of the linearized diffusivity
// vbar^alpha (|grad u|^2 + eps^2)^((gamma-1)/2). Faces with vbar = 0, and
// exactly flat faces when eps = 0, carry no flux and are skipped.
double stable_dt(const ScalarField& v, const Problem& problem, const StepControl& ctrl);

struct StepResult {
  ScalarField state;
  double clipped_mass = 0.0;  // mass added when negative undershoots hit the floor
  int iterations = 0;         // linear solver iterations (semi-implicit only)
};

// One step of d_t v = L(v) + f. Explicit: forward Euler followed by clipping
// at zero. SemiImplicit: one Picard sweep with face coefficients frozen at the
// step start; the resulting SPD system is solved matrix-free by conjugate
// gradients to newton_tol, then clipped. Throws ConvergenceError when the
// solve exceeds max_newton_iters.
StepResult step(const ScalarField& v, double t, double dt, const Problem& problem,
                const StepControl& ctrl);

// Integrates from v0 to the problem horizon, recording every store_every-th
// state (and always the final one) plus per-step diagnostics.
SpaceTimeSolution run(const Problem& problem, const StepControl& ctrl);

}  // namespace dsw
