#include "dsw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

void check_axis(int cells, double length, const char* axis) {
  if (cells < 4) {
    std::ostringstream why;
    why << "grid needs at least 4 cells per axis, got " << cells << " on " << axis;
    throw DomainError(why.str());
  }
  if (!(length > 0.0)) {
    std::ostringstream why;
    why << "grid extent must be positive, got " << length << " on " << axis;
    throw DomainError(why.str());
  }
}

}  // namespace

Grid Grid::line(int nx, double length, double x0) {
  check_axis(nx, length, "x");
  Grid g;
  g.n = 1;
  g.cells = {nx, 1};
  g.extent = {length, 0.0};
  g.origin = {x0, 0.0};
  g.spacing = {length / nx, 0.0};
  return g;
}

Grid Grid::rect(int nx, int ny, double lx, double ly, double x0, double y0) {
  check_axis(nx, lx, "x");
  check_axis(ny, ly, "y");
  Grid g;
  g.n = 2;
  g.cells = {nx, ny};
  g.extent = {lx, ly};
  g.origin = {x0, y0};
  g.spacing = {lx / nx, ly / ny};
  return g;
}

ScalarField ScalarField::zeros(const Grid& g) {
  return ScalarField{g, std::vector<double>(g.cell_count(), 0.0)};
}

ScalarField ScalarField::constant(const Grid& g, double c) {
  return ScalarField{g, std::vector<double>(g.cell_count(), c)};
}

ScalarField ScalarField::from_function(
    const Grid& g, const std::function<double(std::array<double, 2>)>& fn) {
  ScalarField f = zeros(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) f.at(i, j) = fn(g.cell_center(i, j));
  return f;
}

double field_min(const ScalarField& f) {
  return *std::min_element(f.values.begin(), f.values.end());
}

double field_max(const ScalarField& f) {
  return *std::max_element(f.values.begin(), f.values.end());
}

bool field_finite(const ScalarField& f) {
  return std::all_of(f.values.begin(), f.values.end(),
                     [](double v) { return std::isfinite(v); });
}

double field_mass(const ScalarField& f) {
  long double s = 0.0L;
  for (double v : f.values) s += v;
  return static_cast<double>(s) * f.grid.cell_volume();
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    d = std::max(d, std::fabs(a.values[k] - b.values[k]));
  return d;
}

ScalarField power_transform(const ScalarField& v, double exponent) {
  if (!(exponent > 0.0)) throw DomainError("power_transform exponent must be positive");
  ScalarField out = v;
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    double x = v.values[k];
    if (x < 0.0) {
      std::ostringstream why;
      why << "power_transform: negative input " << x << " at cell " << k;
      throw DomainError(why.str());
    }
    out.values[k] = x == 0.0 ? 0.0 : std::pow(x, exponent);
  }
  return out;
}

std::vector<std::array<double, 2>> central_gradient(const ScalarField& f) {
  const Grid& g = f.grid;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 1.0;
  std::vector<std::array<double, 2>> grad(g.cell_count(), {0.0, 0.0});
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double gx;
      if (i == 0)
        gx = (f.at(1, j) - f.at(0, j)) / hx;
      else if (i == nx - 1)
        gx = (f.at(nx - 1, j) - f.at(nx - 2, j)) / hx;
      else
        gx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hx);
      double gy = 0.0;
      if (g.n == 2) {
        if (j == 0)
          gy = (f.at(i, 1) - f.at(i, 0)) / hy;
        else if (j == ny - 1)
          gy = (f.at(i, ny - 1) - f.at(i, ny - 2)) / hy;
        else
          gy = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * hy);
      }
      grad[g.idx(i, j)] = {gx, gy};
    }
  }
  return grad;
}

}  // namespace dsw
