#pragma once

#include <utility>
#include <vector>

#include "json.hpp"

#include "dsw/cylinder.hpp"
#include "dsw/params.hpp"
#include "dsw/problem.hpp"

namespace dsw {

// Shrinking radii, time half-lengths and rising truncation levels of the
// iteration on nested cylinders:
//   rho_j = (1 + 2^-j) rho / 2            -> rho/2
//   tau_j = (rho/2)^m (1 + (2^m - 1) 2^-mj) -> (rho/2)^m, tau_0 = rho^m
//   k_j   = k (1 - 2^-j)^(2/(beta+1))     -> k, k_0 = 0
// with the hatted midpoints between consecutive entries.
struct IterationSchedule {
  double rho = 0.25;
  double m = 4.0 / 3.0;
  double beta = 3.0;
  int j_max = 25;
  std::vector<double> rho_j, rho_hat_j, tau_j, tau_hat_j;  // indices 0..j_max

  static IterationSchedule make(double rho, const Parameters& params, int j_max);
  double level(double k, int j) const;
};

// Structural constants of the recursion Y_{j+1} <= C b^j Y_j^(1+delta):
//   b = 2^((2 beta (gamma+1)/(beta+1)) (m+n+gamma+1)/(m+n))
//   delta = (gamma+1 - (n+gamma+1)/sigma) / (n+m), positive whenever sigma is
//   admissible. C depends on the scenario and is supplied by the caller.
struct IterationConstants {
  double C = 2.0;
  double b = 2.0;
  double delta = 1.0;

  static IterationConstants from(const Parameters& params, double C_value);
};

struct FastConvergenceResult {
  bool converges = false;   // Y0 meets the closed-form smallness threshold
  double threshold = 0.0;   // C^(-1/delta) b^(-1/delta^2)
  std::vector<double> trace;  // extremal recursion Y_{j+1} = C b^j Y_j^(1+delta)
};

// Checks Y0 against the threshold and runs the extremal recursion to j_max.
FastConvergenceResult fast_convergence(double Y0, double C, double b, double delta,
                                       int j_max);

// Midpoint quadrature of the truncated level-set integral
//   integral over Q of (v^((beta+1)/2) - k^((beta+1)/2))_+^(2 beta (gamma+1)/(beta+1)).
double level_set_integral(const SpaceTimeSolution& sol, const Cylinder& Q,
                          double k_level, const Parameters& params);

// Quantitative level k = c rho^(-(n+gamma+1)/(beta m)) (1 + Y0)^(1/(beta m))
// with Y0 the level-set integral at level 0 over the intrinsic cylinder; uses
// beta m = beta + 1 exactly. Requires 0 < rho <= 1 and c >= 1.
double theorem_level(const SpaceTimeSolution& sol, std::array<double, 2> x_o, double t_o,
                     double rho, double c, const Parameters& params);

struct CertificateReport {
  double k_final = 0.0;
  std::vector<std::pair<int, double>> y_trace;
  bool converged = false;
  double measured_sup = 0.0;
  bool bound_satisfied = false;
  double calibrated_c = 1.0;

  nlohmann::json to_json() const;
};

// Runs the iteration on a computed solution: calibrates the constant by
// doubling from 1 until the Y-trace collapses (final <= 1e-8 Y_0, or Y_0 = 0)
// and the measured sup over the half cylinder stays below the level. Throws
// CalibrationError when the constant reaches 2^20 without success.
CertificateReport certify(const SpaceTimeSolution& sol, std::array<double, 2> x_o,
                          double t_o, double rho, const Parameters& params,
                          int j_max = 25);

}  // namespace dsw
