#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace dsw {

// Uniform Cartesian grid on an axis-aligned box, 1D or 2D.
// Cell (i,j) is centered at origin + ((i+1/2)hx, (j+1/2)hy) and values are
// stored row-major with x fastest: index = j*nx + i.
struct Grid {
  int n = 1;
  std::array<int, 2> cells{4, 1};
  std::array<double, 2> extent{1.0, 0.0};
  std::array<double, 2> origin{0.0, 0.0};
  std::array<double, 2> spacing{0.25, 0.0};

  static Grid line(int nx, double length = 1.0, double x0 = 0.0);
  static Grid rect(int nx, int ny, double lx = 1.0, double ly = 1.0,
                   double x0 = 0.0, double y0 = 0.0);

  int nx() const { return cells[0]; }
  int ny() const { return n == 2 ? cells[1] : 1; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
  }
  double cell_volume() const { return n == 2 ? spacing[0] * spacing[1] : spacing[0]; }
  double min_spacing() const { return n == 2 ? std::min(spacing[0], spacing[1]) : spacing[0]; }
  std::size_t idx(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx()) +
           static_cast<std::size_t>(i);
  }
  double x_center(int i) const { return origin[0] + (i + 0.5) * spacing[0]; }
  double y_center(int j) const { return origin[1] + (j + 0.5) * spacing[1]; }
  std::array<double, 2> cell_center(int i, int j = 0) const {
    return {x_center(i), n == 2 ? y_center(j) : 0.0};
  }

  bool operator==(const Grid&) const = default;
};

// Grid function with one value per cell.
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  static ScalarField zeros(const Grid& g);
  static ScalarField constant(const Grid& g, double c);
  // fn receives the cell center (x[, y]).
  static ScalarField from_function(const Grid& g,
                                   const std::function<double(std::array<double, 2>)>& fn);

  double& operator[](std::size_t k) { return values[k]; }
  double operator[](std::size_t k) const { return values[k]; }
  double at(int i, int j = 0) const { return values[grid.idx(i, j)]; }
  double& at(int i, int j = 0) { return values[grid.idx(i, j)]; }
};

double field_min(const ScalarField& f);
double field_max(const ScalarField& f);
bool field_finite(const ScalarField& f);
// Integral of the field over the domain (sum of values times cell volume).
double field_mass(const ScalarField& f);
double max_abs_difference(const ScalarField& a, const ScalarField& b);

// Pointwise v^exponent with the convention 0^exponent = 0.
// Requires v >= 0 and exponent > 0; throws DomainError otherwise.
ScalarField power_transform(const ScalarField& v, double exponent);

// Cell-centered gradient: central differences in the interior, one-sided at
// the domain boundary. Component [1] is zero for 1D grids.
std::vector<std::array<double, 2>> central_gradient(const ScalarField& f);

}  // namespace dsw
