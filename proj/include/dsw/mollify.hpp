#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dsw/problem.hpp"

namespace dsw {

// Signal on [0,T], piecewise constant in time: value(j,c) holds on
// [times[j], times[j+1]) for component c. Components carry quadrature weights
// (cell volumes for field-valued signals, 1 for scalars).
struct TimeSignal {
  std::vector<double> times;    // size K >= 2, times[0] == 0, strictly increasing
  std::size_t components = 1;
  std::vector<double> values;   // K * components, time-major
  std::vector<double> weights;  // size components

  double value(std::size_t j, std::size_t c) const { return values[j * components + c]; }
  double duration() const { return times.back(); }

  static TimeSignal scalar(std::vector<double> times, std::vector<double> vals);
  static TimeSignal from_solution(const SpaceTimeSolution& sol);
  // Throws DomainError when times or values violate the invariants.
  void validate() const;
};

// Exponential mollification w_h(t) = (1/h) \int_0^t e^((s-t)/h) w(s) ds,
// integrated in closed form against the piecewise-constant signal. Exposes
// evaluation at arbitrary t for quadrature at subinterval midpoints.
class ExpMollification {
 public:
  ExpMollification(const TimeSignal& w, double h);
  // Exact value of w_h at any t in [0, T].
  double eval(std::size_t comp, double t) const;
  double at_sample(std::size_t j, std::size_t comp) const {
    return at_samples_[j * w_->components + comp];
  }

 private:
  const TimeSignal* w_;
  double h_;
  std::vector<double> at_samples_;
};

// Mollified signals sampled at the input times.
TimeSignal mollify_forward(const TimeSignal& w, double h);
// Reversed kernel (1/h) \int_t^T e^((t-s)/h) w(s) ds; equals the forward
// mollification of the time-reflected signal evaluated at T - t.
TimeSignal mollify_backward(const TimeSignal& w, double h);

// Max residual of the derivative identity d_t w_h = (w - w_h)/h, measured by
// finite differences of w_h across adjacent subinterval midpoints against the
// right-hand side at the straddled midpoint. Exact (up to rounding and the
// O(dt^2) stencil error) for signals without jumps; O(dt) when the sampled
// signal has jumps of size O(dt).
double check_time_derivative_identity(const TimeSignal& w, double h);

// Discrete L^p norms (midpoint quadrature): returns (|w_h|_p, |w|_p); the
// kernel has mass below one, so the first never exceeds the second.
std::pair<double, double> check_lp_contraction(const TimeSignal& w, double h, double p);

double lp_norm(const TimeSignal& w, double p);
// |w_h - w|_p by midpoint quadrature, for mollification convergence studies.
double lp_mollification_error(const TimeSignal& w, double h, double p);

}  // namespace dsw
