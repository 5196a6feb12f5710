#pragma once

#include <string>
#include <vector>

#include "dsw/grid.hpp"
#include "dsw/params.hpp"

namespace dsw {

enum class BoundaryCondition { DirichletZeroV, ZeroFlux };

// Source term f, piecewise constant in time. Modes: identically zero, a
// uniform rate, one steady field, or a time-indexed series of fields.
class SourceTerm {
 public:
  static SourceTerm zero();
  static SourceTerm constant(double rate);
  static SourceTerm steady(ScalarField field);
  static SourceTerm series(std::vector<double> times, std::vector<ScalarField> fields);

  bool is_zero() const { return mode_ == Mode::Zero; }
  // Value of f at time t in the given cell.
  double at(double t, std::size_t cell) const;
  // Samples f(t) on a grid.
  ScalarField sample(double t, const Grid& g) const;
  std::vector<std::string> validate(const Grid& g) const;

 private:
  enum class Mode { Zero, Constant, Steady, Series };
  Mode mode_ = Mode::Zero;
  double rate_ = 0.0;
  std::vector<double> times_;
  std::vector<ScalarField> fields_;
};

// A full initial/boundary value problem for the depth v = u - z.
struct Problem {
  Parameters params;
  Grid grid;
  ScalarField topography;     // z
  ScalarField initial_depth;  // v0 >= 0
  SourceTerm source;
  BoundaryCondition boundary = BoundaryCondition::ZeroFlux;
  double eps = 1e-8;   // gradient regularization; 0 allowed for explicit stepping
  double horizon = 1.0;  // final time T
};

// Report-style validation: empty result iff all invariants hold. Each entry
// names the offending field and rule.
std::vector<std::string> validate_problem(const Problem& p);

struct StepDiagnostics {
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double clipped_mass = 0.0;  // mass added by clipping during this step
  double max_depth = 0.0;
};

// Time-indexed sequence of depth fields. States are piecewise constant in
// time: states[i] holds on [times[i], times[i+1]). Diagnostics cover every
// solver step even when states are stored at a coarser cadence.
struct SpaceTimeSolution {
  Problem problem;
  std::vector<double> times;
  std::vector<ScalarField> states;
  std::vector<StepDiagnostics> diagnostics;
  double total_clipped_mass = 0.0;

  double final_time() const { return times.empty() ? 0.0 : times.back(); }
  std::size_t slice_count() const { return times.size(); }
};

}  // namespace dsw
