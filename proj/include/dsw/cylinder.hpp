#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dsw/params.hpp"
#include "dsw/problem.hpp"

namespace dsw {

// Space-time box B_rho(x_o) x (t_o - theta, t_o + theta). The spatial ball is
// Euclidean (an interval in 1D, a disc in 2D).
struct Cylinder {
  std::array<double, 2> center{0.5, 0.5};  // x_o (second entry unused in 1D)
  double t_center = 0.5;
  double rho = 0.25;
  double theta = 0.25;

  // Intrinsic scaling theta = rho^m.
  static Cylinder intrinsic(std::array<double, 2> x_o, double t_o, double rho,
                            const Parameters& params);
};

// Grid/step-resolved view of a cylinder: the cells whose centers lie in the
// ball and the stored slices overlapping the time window.
struct ResolvedCylinder {
  std::vector<std::size_t> cells;
  std::size_t slice_begin = 0;  // half-open range of stored slice indices
  std::size_t slice_end = 0;
  double t_lo = 0.0, t_hi = 0.0;

  std::size_t slice_count() const { return slice_end - slice_begin; }
  // Overlap of stored slice j (valid on [times[j], times[j+1])) with the window.
  double overlap(const std::vector<double>& times, std::size_t j) const;
};

// Resolves against a solution; throws GeometryError unless the cylinder is
// strictly inside the space-time domain and covers at least one cell and one
// slice.
ResolvedCylinder resolve(const Cylinder& c, const SpaceTimeSolution& sol);

}  // namespace dsw
