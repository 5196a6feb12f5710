#include <cmath>

#include "doctest.h"
#include "dsw/degiorgi.hpp"
#include "dsw/energy.hpp"
#include "dsw/scenario.hpp"
#include "dsw/stepping.hpp"

using dsw::Cylinder;
using dsw::Grid;
using dsw::Problem;
using dsw::ScalarField;

namespace {

Problem bump_2d(int cells, double T) {
  Grid g = Grid::rect(cells, cells, 1.0, 1.0);
  Problem p;
  p.params = dsw::derive_parameters(1.0, 0.5, 2, dsw::default_sigma(0.5, 2));
  p.grid = g;
  p.topography = dsw::topography_preset_field(g, "bump", 0.2);
  p.initial_depth = dsw::initial_bump(g, 0.8, 0.3);
  p.eps = 1e-2;
  p.horizon = T;
  return p;
}

}  // namespace

TEST_SUITE("plane") {

TEST_CASE("2D run conserves mass and keeps states nonnegative") {
  Problem p = bump_2d(32, 0.01);
  dsw::StepControl ctrl;
  ctrl.store_every = 20;
  dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
  const double m0 = dsw::field_mass(p.initial_depth);
  const double mT = dsw::field_mass(sol.states.back());
  CHECK(std::fabs(mT - m0 - sol.total_clipped_mass) <= 1e-10 * (m0 + 1.0));
  for (const ScalarField& s : sol.states) CHECK(dsw::field_min(s) >= 0.0);
}

TEST_CASE("2D semi-implicit step approaches the explicit flow") {
  Problem p = bump_2d(24, 5e-4);
  dsw::StepControl expl;
  expl.dt_max = 2e-6;
  dsw::SpaceTimeSolution a = dsw::run(p, expl);
  dsw::StepControl semi;
  semi.scheme = dsw::Scheme::SemiImplicit;
  semi.dt_max = 5e-5;
  dsw::SpaceTimeSolution b = dsw::run(p, semi);
  CHECK(dsw::max_abs_difference(a.states.back(), b.states.back()) < 2e-3);
}

TEST_CASE("2D energy report and certificate") {
  Problem p = bump_2d(32, 0.01);
  dsw::StepControl ctrl;
  ctrl.store_every = 10;
  dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);

  Cylinder inner{{0.5, 0.5}, 0.005, 0.15, 0.002};
  Cylinder outer{{0.5, 0.5}, 0.005, 0.35, 0.0045};
  double prev = std::numeric_limits<double>::infinity();
  for (double k : {0.1, 0.4, 0.7}) {
    dsw::EnergyReport rep = dsw::caccioppoli_report(sol, inner, outer, k);
    CHECK(std::isfinite(rep.empirical_ratio));
    CHECK(rep.lhs_total() <= prev * (1.0 + 1e-12));
    CHECK(rep.lhs_total() >= 0.0);
    prev = rep.lhs_total();
  }

  CHECK(dsw::weak_residual(sol, dsw::build_cutoff(inner, outer)) < 1e-3);
}

TEST_CASE("2D certificate on an intrinsic cylinder") {
  Problem p = bump_2d(32, 0.05);
  dsw::StepControl ctrl;
  ctrl.store_every = 40;
  dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
  // rho^m = 0.06^(4/3) = 0.023 keeps the window inside (0, 0.05)
  dsw::CertificateReport rep = dsw::certify(sol, {0.5, 0.5}, 0.025, 0.06, p.params, 20);
  CHECK(rep.converged);
  CHECK(rep.bound_satisfied);
  CHECK(rep.measured_sup <= 0.8);
  CHECK(rep.calibrated_c <= 1024.0);
}

}
