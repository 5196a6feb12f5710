#include "dsw/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

SourceTerm SourceTerm::zero() { return SourceTerm{}; }

SourceTerm SourceTerm::constant(double rate) {
  SourceTerm s;
  s.mode_ = rate == 0.0 ? Mode::Zero : Mode::Constant;
  s.rate_ = rate;
  return s;
}

SourceTerm SourceTerm::steady(ScalarField field) {
  SourceTerm s;
  s.mode_ = Mode::Steady;
  s.fields_.push_back(std::move(field));
  return s;
}

SourceTerm SourceTerm::series(std::vector<double> times, std::vector<ScalarField> fields) {
  if (times.empty() || times.size() != fields.size())
    throw DomainError("source series needs matching nonempty times and fields");
  SourceTerm s;
  s.mode_ = Mode::Series;
  s.times_ = std::move(times);
  s.fields_ = std::move(fields);
  return s;
}

double SourceTerm::at(double t, std::size_t cell) const {
  switch (mode_) {
    case Mode::Zero: return 0.0;
    case Mode::Constant: return rate_;
    case Mode::Steady: return fields_.front().values[cell];
    case Mode::Series: {
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      std::size_t k = it == times_.begin() ? 0 : (it - times_.begin()) - 1;
      return fields_[k].values[cell];
    }
  }
  return 0.0;
}

ScalarField SourceTerm::sample(double t, const Grid& g) const {
  ScalarField f = ScalarField::zeros(g);
  if (mode_ == Mode::Zero) return f;
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = at(t, k);
  return f;
}

std::vector<std::string> SourceTerm::validate(const Grid& g) const {
  std::vector<std::string> bad;
  for (std::size_t q = 0; q < fields_.size(); ++q) {
    if (fields_[q].values.size() != g.cell_count())
      bad.push_back("source field " + std::to_string(q) + " does not match the grid");
    else if (!field_finite(fields_[q]))
      bad.push_back("source field " + std::to_string(q) + " contains non-finite values");
  }
  if (mode_ == Mode::Constant && !std::isfinite(rate_))
    bad.push_back("source rate is non-finite");
  for (std::size_t q = 1; q < times_.size(); ++q)
    if (!(times_[q] > times_[q - 1])) {
      bad.push_back("source series times are not strictly increasing");
      break;
    }
  return bad;
}

namespace {

std::string cell_name(const Grid& g, std::size_t k) {
  std::ostringstream s;
  if (g.n == 2) {
    s << "(" << k % g.nx() << "," << k / g.nx() << ")";
  } else {
    s << "(" << k << ")";
  }
  return s.str();
}

}  // namespace

std::vector<std::string> validate_problem(const Problem& p) {
  std::vector<std::string> bad;

  try {
    derive_parameters(p.params.alpha, p.params.gamma, p.params.n, p.params.sigma);
  } catch (const DomainError& e) {
    bad.push_back(std::string("params: ") + e.what());
  }
  double beta = (p.params.alpha + p.params.gamma) / p.params.gamma;
  if (std::fabs(p.params.beta - beta) > 1e-12 * std::max(1.0, std::fabs(beta)))
    bad.push_back("params: beta inconsistent with (alpha+gamma)/gamma");

  if (p.params.n != p.grid.n) bad.push_back("grid: dimension does not match params.n");
  for (int a = 0; a < p.grid.n; ++a) {
    if (p.grid.cells[a] < 4) bad.push_back("grid: fewer than 4 cells on an axis");
    if (!(p.grid.spacing[a] > 0.0)) bad.push_back("grid: nonpositive spacing");
  }

  if (p.topography.grid != p.grid) {
    bad.push_back("z: field grid does not match problem grid");
  } else {
    for (std::size_t k = 0; k < p.topography.values.size(); ++k)
      if (!std::isfinite(p.topography.values[k])) {
        bad.push_back("z non-finite at cell " + cell_name(p.grid, k));
        break;
      }
  }

  if (p.initial_depth.grid != p.grid) {
    bad.push_back("v0: field grid does not match problem grid");
  } else {
    for (std::size_t k = 0; k < p.initial_depth.values.size(); ++k) {
      double v = p.initial_depth.values[k];
      if (!std::isfinite(v)) {
        bad.push_back("v0 non-finite at cell " + cell_name(p.grid, k));
        break;
      }
      if (v < 0.0) {
        bad.push_back("v0 negative at cell " + cell_name(p.grid, k));
        break;
      }
    }
  }

  for (const std::string& s : p.source.validate(p.grid)) bad.push_back(s);

  if (!(p.eps >= 0.0)) bad.push_back("eps: regularization must be nonnegative");
  if (!(p.horizon >= 0.0) || !std::isfinite(p.horizon))
    bad.push_back("T: time horizon must be finite and nonnegative");

  return bad;
}

}  // namespace dsw
