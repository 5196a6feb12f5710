#include "dsw/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

IterationSchedule IterationSchedule::make(double rho, const Parameters& params, int j_max) {
  if (!(rho > 0.0)) throw DomainError("iteration schedule needs rho > 0");
  if (j_max < 1) throw DomainError("iteration schedule needs j_max >= 1");
  IterationSchedule s;
  s.rho = rho;
  s.m = params.m;
  s.beta = params.beta;
  s.j_max = j_max;
  const double half_m = std::pow(0.5 * rho, s.m);
  const double gain = std::pow(2.0, s.m) - 1.0;
  auto rho_at = [&](int j) { return 0.5 * (1.0 + std::pow(2.0, -j)) * rho; };
  auto tau_at = [&](int j) { return half_m * (1.0 + gain * std::pow(2.0, -s.m * j)); };
  for (int j = 0; j <= j_max; ++j) {
    s.rho_j.push_back(rho_at(j));
    s.rho_hat_j.push_back(0.5 * (rho_at(j) + rho_at(j + 1)));
    s.tau_j.push_back(tau_at(j));
    s.tau_hat_j.push_back(0.5 * (tau_at(j) + tau_at(j + 1)));
  }
  return s;
}

double IterationSchedule::level(double k, int j) const {
  if (j == 0) return 0.0;
  return k * std::pow(1.0 - std::pow(2.0, -j), 2.0 / (beta + 1.0));
}

IterationConstants IterationConstants::from(const Parameters& params, double C_value) {
  IterationConstants c;
  c.C = C_value;
  const double beta = params.beta, gamma = params.gamma, m = params.m;
  const double n = params.n;
  c.b = std::pow(2.0, 2.0 * beta * (gamma + 1.0) / (beta + 1.0) *
                          (m + n + gamma + 1.0) / (m + n));
  c.delta = (gamma + 1.0 - (n + gamma + 1.0) / params.sigma) / (n + m);
  return c;
}

FastConvergenceResult fast_convergence(double Y0, double C, double b, double delta,
                                       int j_max) {
  if (!(C > 1.0 && b > 1.0 && delta > 0.0))
    throw DomainError("fast_convergence needs C > 1, b > 1, delta > 0");
  if (Y0 < 0.0) throw DomainError("fast_convergence needs Y0 >= 0");
  FastConvergenceResult r;
  r.threshold = std::pow(C, -1.0 / delta) * std::pow(b, -1.0 / (delta * delta));
  r.converges = Y0 <= r.threshold;
  r.trace.push_back(Y0);
  double y = Y0;
  for (int j = 0; j < j_max; ++j) {
    y = C * std::pow(b, j) * std::pow(y, 1.0 + delta);
    if (!std::isfinite(y)) y = std::numeric_limits<double>::infinity();
    r.trace.push_back(y);
    if (y == 0.0) break;
  }
  return r;
}

double level_set_integral(const SpaceTimeSolution& sol, const Cylinder& Q,
                          double k_level, const Parameters& params) {
  if (k_level < 0.0) throw DomainError("level_set_integral needs k_level >= 0");
  ResolvedCylinder r = resolve(Q, sol);
  const double beta = params.beta, gamma = params.gamma;
  const double khalf = k_level == 0.0 ? 0.0 : std::pow(k_level, 0.5 * (beta + 1.0));
  const double p = 2.0 * beta * (gamma + 1.0) / (beta + 1.0);
  const double vol = sol.problem.grid.cell_volume();

  long double acc = 0.0L;
  for (std::size_t j = r.slice_begin; j < r.slice_end; ++j) {
    const double len = r.overlap(sol.times, j);
    if (len <= 0.0) continue;
    const ScalarField& v = sol.states[j];
    long double slice = 0.0L;
    for (std::size_t c : r.cells) {
      const double base = v.values[c] <= 0.0 ? 0.0 : std::pow(v.values[c], 0.5 * (beta + 1.0));
      const double t = base - khalf;
      if (t > 0.0) slice += std::pow(t, p);
    }
    acc += slice * len;
  }
  return static_cast<double>(acc) * vol;
}

double theorem_level(const SpaceTimeSolution& sol, std::array<double, 2> x_o, double t_o,
                     double rho, double c, const Parameters& params) {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("theorem_level needs 0 < rho <= 1");
  if (!(c >= 1.0)) throw DomainError("theorem_level needs c >= 1");
  const double bm = params.beta * params.m;
  if (std::fabs(bm - (params.beta + 1.0)) > 1e-12 * (params.beta + 1.0))
    throw DomainError("theorem_level: beta*m != beta+1; parameters are inconsistent");
  Cylinder Q = Cylinder::intrinsic(x_o, t_o, rho, params);
  const double mass = level_set_integral(sol, Q, 0.0, params);
  const double expo = (params.n + params.gamma + 1.0) / bm;
  return c * std::pow(rho, -expo) * std::pow(1.0 + mass, 1.0 / bm);
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [j, y] : y_trace) trace.push_back({{"j", j}, {"Y", y}});
  return nlohmann::json{{"k_final", k_final},
                        {"Y_trace", trace},
                        {"converged", converged},
                        {"measured_sup", measured_sup},
                        {"bound_satisfied", bound_satisfied},
                        {"calibrated_c", calibrated_c}};
}

CertificateReport certify(const SpaceTimeSolution& sol, std::array<double, 2> x_o,
                          double t_o, double rho, const Parameters& params, int j_max) {
  IterationSchedule sched = IterationSchedule::make(rho, params, j_max);

  // Sup of the depth over the half cylinder, max over stored slices/cells.
  Cylinder half;
  half.center = x_o;
  half.t_center = t_o;
  half.rho = 0.5 * rho;
  half.theta = std::pow(0.5 * rho, params.m);
  ResolvedCylinder rhalf = resolve(half, sol);
  double sup = 0.0;
  for (std::size_t j = rhalf.slice_begin; j < rhalf.slice_end; ++j) {
    if (rhalf.overlap(sol.times, j) <= 0.0) continue;
    for (std::size_t c : rhalf.cells) sup = std::max(sup, sol.states[j].values[c]);
  }

  const double cap = std::pow(2.0, 20);
  for (double c = 1.0; c <= cap; c *= 2.0) {
    CertificateReport rep;
    rep.calibrated_c = c;
    rep.measured_sup = sup;
    rep.k_final = theorem_level(sol, x_o, t_o, rho, c, params);

    double y0 = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= j_max; ++j) {
      Cylinder Qj;
      Qj.center = x_o;
      Qj.t_center = t_o;
      Qj.rho = sched.rho_j[j];
      Qj.theta = sched.tau_j[j];
      const double yj =
          level_set_integral(sol, Qj, sched.level(rep.k_final, j), params);
      if (yj > prev * (1.0 + 1e-12))
        throw std::logic_error("certify: Y-trace failed to be nonincreasing");
      prev = yj;
      rep.y_trace.emplace_back(j, yj);
      if (j == 0) y0 = yj;
    }
    rep.converged = y0 == 0.0 || rep.y_trace.back().second <= 1e-8 * y0;
    rep.bound_satisfied = sup <= rep.k_final;
    if (rep.converged && rep.bound_satisfied) return rep;
  }
  std::ostringstream why;
  why << "certify: constant calibration reached 2^20 without a convergent trace";
  throw CalibrationError(why.str());
}

}  // namespace dsw
