#include "dsw/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

Cylinder Cylinder::intrinsic(std::array<double, 2> x_o, double t_o, double rho,
                             const Parameters& params) {
  Cylinder c;
  c.center = x_o;
  c.t_center = t_o;
  c.rho = rho;
  c.theta = std::pow(rho, params.m);
  return c;
}

double ResolvedCylinder::overlap(const std::vector<double>& times, std::size_t j) const {
  const double a = std::max(times[j], t_lo);
  const double b = std::min(j + 1 < times.size() ? times[j + 1] : times.back(), t_hi);
  return std::max(0.0, b - a);
}

ResolvedCylinder resolve(const Cylinder& c, const SpaceTimeSolution& sol) {
  const Grid& g = sol.problem.grid;
  if (!(c.rho > 0.0) || !(c.theta > 0.0))
    throw GeometryError("cylinder radius and half-length must be positive");

  for (int a = 0; a < g.n; ++a) {
    const double lo = g.origin[a], hi = g.origin[a] + g.extent[a];
    if (!(c.center[a] - c.rho > lo && c.center[a] + c.rho < hi)) {
      std::ostringstream why;
      why << "cylinder ball [" << c.center[a] - c.rho << ", " << c.center[a] + c.rho
          << "] exits the domain [" << lo << ", " << hi << "] on axis " << a;
      throw GeometryError(why.str());
    }
  }
  const double T = sol.final_time();
  if (!(c.t_center - c.theta > 0.0 && c.t_center + c.theta < T)) {
    std::ostringstream why;
    why << "cylinder time window (" << c.t_center - c.theta << ", "
        << c.t_center + c.theta << ") exits (0, " << T << ")";
    throw GeometryError(why.str());
  }

  ResolvedCylinder r;
  r.t_lo = c.t_center - c.theta;
  r.t_hi = c.t_center + c.theta;

  const double rho2 = c.rho * c.rho;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double dx = g.x_center(i) - c.center[0];
      const double dy = g.n == 2 ? g.y_center(j) - c.center[1] : 0.0;
      if (dx * dx + dy * dy < rho2) r.cells.push_back(g.idx(i, j));
    }
  }
  if (r.cells.empty()) throw GeometryError("cylinder ball contains no cell centers");

  // Stored slice j covers [times[j], times[j+1]); the final state has zero
  // duration and never overlaps an interior window.
  const std::vector<double>& times = sol.times;
  std::size_t first = times.size(), last = 0;
  for (std::size_t j = 0; j + 1 < times.size(); ++j) {
    if (times[j + 1] > r.t_lo && times[j] < r.t_hi) {
      first = std::min(first, j);
      last = std::max(last, j + 1);
    }
  }
  if (first >= last) throw GeometryError("cylinder time window overlaps no stored slice");
  r.slice_begin = first;
  r.slice_end = last;
  return r;
}

}  // namespace dsw
