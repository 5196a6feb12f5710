// Acceptance suite: one scenario-level criterion per entry, each printed as a
// single pass/fail line. Run with no arguments for all criteria or with an
// index (1-10) for one of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsw/degiorgi.hpp"
#include "dsw/energy.hpp"
#include "dsw/flux.hpp"
#include "dsw/mollify.hpp"
#include "dsw/scenario.hpp"
#include "dsw/stepping.hpp"
#include "dsw/verification.hpp"

using dsw::Cylinder;
using dsw::Grid;
using dsw::Problem;
using dsw::ScalarField;
using dsw::TimeSignal;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Problem base_problem(const Grid& g, ScalarField z, ScalarField v0, double eps, double T,
                     double alpha = 1.0, double gamma = 0.5) {
  Problem p;
  p.params = dsw::derive_parameters(alpha, gamma, g.n, dsw::default_sigma(gamma, g.n));
  p.grid = g;
  p.topography = std::move(z);
  p.initial_depth = std::move(v0);
  p.eps = eps;
  p.horizon = T;
  return p;
}

Problem dam_break(int cells, double T, double eps = 1e-2) {
  Grid g = Grid::line(cells, 1.0);
  ScalarField z = ScalarField::zeros(g);
  return base_problem(g, z, dsw::initial_dam_break(g, z, 1.0, 0.0, 0.5), eps, T);
}

std::vector<double> uniform_times(double T, std::size_t K) {
  std::vector<double> t(K);
  for (std::size_t j = 0; j < K; ++j) t[j] = T * static_cast<double>(j) / (K - 1);
  t.back() = T;
  return t;
}

// ---------------------------------------------------------------- criterion 1
Outcome boundary_quantity_bounds() {
  Outcome o;
  std::ostringstream d;
  bool ok = true;
  for (double beta : {1.5, 3.0, 5.0}) {
    dsw::BoundaryBounds b = dsw::check_boundary_bounds(10000, beta, 0);
    ok = ok && std::isfinite(b.min_ratio) && std::isfinite(b.max_ratio) &&
         b.min_ratio > 0.0 && b.max_ratio >= b.min_ratio;
    d << "beta=" << beta << " ratio in [" << b.min_ratio << "," << b.max_ratio << "] ";
  }
  dsw::BoundaryBounds b1 = dsw::check_boundary_bounds(10000, 1.0, 0);
  const bool half =
      std::fabs(b1.min_ratio - 0.5) <= 1e-12 && std::fabs(b1.max_ratio - 0.5) <= 1e-12;
  d << "beta=1 ratio=[" << b1.min_ratio << "," << b1.max_ratio << "]";
  o.pass = ok && half;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 2
Outcome mollifier_identities() {
  Outcome o;
  std::ostringstream d;
  bool ok = true;

  // derivative identity at machine level for closed-form (constant) signals
  double worst_const = 0.0;
  for (double c : {0.0, 1e-4, -3e-5}) {
    std::vector<double> t = uniform_times(1.0, 40001);
    TimeSignal w = TimeSignal::scalar(t, std::vector<double>(t.size(), c));
    worst_const = std::max(worst_const, dsw::check_time_derivative_identity(w, 1.0));
  }
  ok = ok && worst_const <= 1e-12;
  d << "const residual " << worst_const;

  // halving under time refinement for seeded random signals
  bool halves = true;
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    std::vector<double> tc = uniform_times(1.0, 1001);
    std::vector<double> tf = uniform_times(1.0, 2001);
    TimeSignal wc = TimeSignal::scalar(tc, dsw::fourier_signal_values(seed, tc));
    TimeSignal wf = TimeSignal::scalar(tf, dsw::fourier_signal_values(seed, tf));
    const double ratio = dsw::check_time_derivative_identity(wc, 0.1) /
                         dsw::check_time_derivative_identity(wf, 0.1);
    halves = halves && ratio >= 1.6 && ratio <= 2.4;
    d << " refine x" << ratio;
  }
  ok = ok && halves;

  // L^p contraction in 100/100 seeded trials, p in {1, 2, gamma+1}
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(-2.0, 3.0);
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t = uniform_times(1.0, 201);
    std::vector<double> vals(t.size());
    for (double& v : vals) v = uni(rng);
    TimeSignal w = TimeSignal::scalar(t, vals);
    bool all = true;
    for (double p : {1.0, 2.0, 1.5}) {
      auto [lhs, rhs] = dsw::check_lp_contraction(w, 0.05 + 0.001 * trial, p);
      all = all && lhs <= rhs * (1.0 + 1e-10);
    }
    if (all) ++good;
  }
  ok = ok && good == 100;
  d << " contraction " << good << "/100";

  // |w_h - w|_p decreasing over three decades of h
  std::vector<double> t = uniform_times(1.0, 100001);
  std::vector<double> vals(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double s = std::sin(3.141592653589793 * t[j]);
    vals[j] = s * s;
  }
  TimeSignal w = TimeSignal::scalar(t, vals);
  const double e1 = dsw::lp_mollification_error(w, 0.1, 2.0);
  const double e2 = dsw::lp_mollification_error(w, 0.01, 2.0);
  const double e3 = dsw::lp_mollification_error(w, 0.001, 2.0);
  ok = ok && e1 > e2 && e2 > e3;
  d << " h-errors " << e1 << ">" << e2 << ">" << e3;

  o.pass = ok;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 3
Outcome fast_convergence_agreement() {
  Outcome o;
  dsw::SuiteResult r = dsw::fast_convergence_suite(0, 100);
  std::ostringstream d;
  d << "agreements " << r.details["agreements"].get<int>() << "/100, at-threshold "
    << (r.details["at_threshold_ok"].get<bool>() ? "reached 1e-10*Y0" : "STALLED");
  o.pass = r.passed;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 4
Outcome well_balancedness() {
  Grid g = Grid::line(64, 1.0);
  ScalarField z = dsw::topography_preset_field(g, "bump", 0.3);
  Problem p = base_problem(g, z, dsw::initial_lake_at_rest(g, z, 0.75), 0.0, 1.0);
  dsw::StepControl ctrl;
  ScalarField v = p.initial_depth;
  for (int s = 0; s < 1000; ++s) {
    const double dt = dsw::stable_dt(v, p, ctrl);
    v = dsw::step(v, 0.0, dt, p, ctrl).state;
  }
  const double drift = dsw::max_abs_difference(v, p.initial_depth);
  Outcome o;
  o.pass = drift <= 1e-12;
  std::ostringstream d;
  d << "max|v - v0| = " << drift << " after 1000 explicit steps";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 5
Outcome mass_balance() {
  Outcome o;
  std::ostringstream d;

  Problem p = dam_break(128, 0.4);
  dsw::StepControl ctrl;
  ctrl.store_every = 200;
  dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
  const double m0 = dsw::field_mass(p.initial_depth);
  const double drift =
      std::fabs(dsw::field_mass(sol.states.back()) - m0 - sol.total_clipped_mass);
  const bool ok1 = drift <= 1e-10 * (m0 + 1.0);
  d << "f=0 drift " << drift << " (clipped " << sol.total_clipped_mass << ")";

  Problem q = dam_break(128, 0.2);
  q.source = dsw::SourceTerm::constant(0.5);
  dsw::SpaceTimeSolution sol2 = dsw::run(q, ctrl);
  const double injected = 0.5 * 1.0 * 0.2;
  const double drift2 = std::fabs(dsw::field_mass(sol2.states.back()) - m0 - injected -
                                  sol2.total_clipped_mass);
  const bool ok2 = drift2 <= 1e-10 * (m0 + injected + 1.0);
  d << "; f=const drift " << drift2;

  o.pass = ok1 && ok2;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 6
Outcome pme_limit_refinement() {
  // quadratic slow-diffusion limit: d_t v = (v^2)_xx / 2 has the self-similar
  // solution v(x,t) = B(x, s0 + t/2), B(x,s) = s^(-1/3)(C - x^2/(12 s^(2/3)))_+
  const double C = 1.0, s0 = 1.0, T = 1.0;
  auto exact = [&](double x, double t) {
    const double s = s0 + 0.5 * t;
    return std::pow(s, -1.0 / 3.0) *
           std::max(0.0, C - x * x / (12.0 * std::pow(s, 2.0 / 3.0)));
  };
  auto l1_error = [&](int cells) {
    Grid g = Grid::line(cells, 12.0, -6.0);
    ScalarField z = ScalarField::zeros(g);
    Problem p = base_problem(g, z, dsw::initial_barenblatt(g, C, s0), 1e-6, T, 1.0, 0.999);
    dsw::StepControl ctrl;
    ctrl.store_every = 1000000;  // only the final state matters here
    dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
    const ScalarField& vT = sol.states.back();
    double err = 0.0;
    for (int i = 0; i < g.nx(); ++i)
      err += std::fabs(vT.at(i) - exact(g.x_center(i), T)) * g.cell_volume();
    return err;
  };
  const double e64 = l1_error(64);
  const double e128 = l1_error(128);
  Outcome o;
  o.pass = e64 / e128 >= 1.5;
  std::ostringstream d;
  d << "L1 errors " << e64 << " -> " << e128 << " (factor " << e64 / e128 << ")";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 7
Outcome weak_form_residual() {
  Outcome o;
  std::ostringstream d;

  auto dam_residual = [&](int cells) {
    Problem p = dam_break(cells, 0.2);
    dsw::StepControl ctrl;
    ctrl.store_every = 8;
    dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
    Cylinder inner{{0.5, 0.0}, 0.1, 0.15, 0.04};
    Cylinder outer{{0.5, 0.0}, 0.1, 0.35, 0.09};
    return dsw::weak_residual(sol, dsw::build_cutoff(inner, outer));
  };
  const double r64 = dam_residual(64);
  const double r128 = dam_residual(128);
  const bool refine_ok = r64 / r128 >= 1.5;
  d << "dam residuals " << r64 << " -> " << r128 << " (factor " << r64 / r128 << ")";

  Grid g = Grid::line(64, 1.0);
  ScalarField z = dsw::topography_preset_field(g, "bump", 0.3);
  Problem lake = base_problem(g, z, dsw::initial_lake_at_rest(g, z, 0.75), 0.0, 0.5);
  dsw::SpaceTimeSolution lsol = dsw::run(lake, dsw::StepControl{});
  Cylinder li{{0.5, 0.0}, 0.25, 0.2, 0.08};
  Cylinder lo{{0.5, 0.0}, 0.25, 0.4, 0.2};
  const double lres = dsw::weak_residual(lsol, dsw::build_cutoff(li, lo));
  const bool lake_ok = lres <= 1e-12;
  d << "; lake residual " << lres;

  o.pass = refine_ok && lake_ok;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 8
Outcome caccioppoli_stability() {
  const std::vector<double> ladder{0.1, 0.3, 0.5, 0.7, 0.85};
  auto ratios_at = [&](int cells, bool& monotone, bool& finite) {
    Problem p = dam_break(cells, 0.2);
    dsw::StepControl ctrl;
    ctrl.store_every = 8;
    dsw::SpaceTimeSolution sol = dsw::run(p, ctrl);
    Cylinder inner{{0.5, 0.0}, 0.1, 0.2, 0.04};
    Cylinder outer{{0.5, 0.0}, 0.1, 0.4, 0.09};
    std::vector<double> ratios;
    double prev = std::numeric_limits<double>::infinity();
    monotone = true;
    finite = true;
    for (double k : ladder) {
      dsw::EnergyReport rep = dsw::caccioppoli_report(sol, inner, outer, k);
      finite = finite && std::isfinite(rep.empirical_ratio) && rep.empirical_ratio > 0.0;
      if (rep.lhs_total() > prev * (1.0 + 1e-12)) monotone = false;
      prev = rep.lhs_total();
      ratios.push_back(rep.empirical_ratio);
    }
    return ratios;
  };
  bool mono64 = false, fin64 = false, mono128 = false, fin128 = false;
  std::vector<double> r64 = ratios_at(64, mono64, fin64);
  std::vector<double> r128 = ratios_at(128, mono128, fin128);
  bool stable = true;
  std::ostringstream d;
  for (std::size_t q = 0; q < ladder.size(); ++q) {
    const double hi = std::max(r64[q], r128[q]), lo = std::min(r64[q], r128[q]);
    stable = stable && hi / lo <= 1.5;
    d << "k=" << ladder[q] << " ratio " << r64[q] << "/" << r128[q] << " ";
  }
  Outcome o;
  o.pass = mono64 && mono128 && fin64 && fin128 && stable;
  o.detail = d.str() + (o.pass ? "" : " [monotone/finite/stability violation]");
  return o;
}

// ---------------------------------------------------------------- criterion 9
Outcome certificates() {
  Outcome o;
  std::ostringstream d;

  auto check_report = [&](const dsw::CertificateReport& rep, const char* name) {
    bool ok = rep.converged && rep.bound_satisfied && rep.calibrated_c <= 1024.0;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [j, y] : rep.y_trace) {
      if (y > prev * (1.0 + 1e-12)) ok = false;
      prev = y;
    }
    const double y0 = rep.y_trace.front().second;
    if (!(y0 == 0.0 || rep.y_trace.back().second <= 1e-8 * y0)) ok = false;
    d << name << ": k=" << rep.k_final << " sup=" << rep.measured_sup
      << " c=" << rep.calibrated_c << (ok ? " ok; " : " FAIL; ");
    return ok;
  };

  Problem p = dam_break(128, 0.4);
  dsw::StepControl ctrl;
  ctrl.store_every = 200;
  dsw::SpaceTimeSolution dam = dsw::run(p, ctrl);
  const bool ok1 = check_report(dsw::certify(dam, {0.5, 0.0}, 0.2, 0.25, p.params, 25), "dam");

  Grid g = Grid::line(64, 1.0);
  ScalarField z = dsw::topography_preset_field(g, "bump", 0.3);
  Problem lake = base_problem(g, z, dsw::initial_lake_at_rest(g, z, 0.75), 0.0, 0.5);
  dsw::SpaceTimeSolution lsol = dsw::run(lake, dsw::StepControl{});
  const bool ok2 =
      check_report(dsw::certify(lsol, {0.5, 0.0}, 0.25, 0.25, lake.params, 25), "lake");

  o.pass = ok1 && ok2;
  o.detail = d.str();
  return o;
}

// --------------------------------------------------------------- criterion 10
Outcome schedule_identities() {
  dsw::SuiteResult r = dsw::schedule_identity_suite(0, 100);
  Outcome o;
  o.pass = r.passed;
  std::ostringstream d;
  d << "tau0 err " << r.details["worst_tau0_error"].get<double>() << ", beta*m err "
    << r.details["worst_beta_m_error"].get<double>() << ", min delta "
    << r.details["min_delta"].get<double>();
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria{
      {"boundary-quantity two-sided bounds", boundary_quantity_bounds},
      {"exponential mollifier identities", mollifier_identities},
      {"fast-convergence lemma oracle agreement", fast_convergence_agreement},
      {"well-balanced resting lake", well_balancedness},
      {"discrete mass balance", mass_balance},
      {"quadratic-limit refinement vs closed form", pme_limit_refinement},
      {"weak-form residual", weak_form_residual},
      {"truncation energy stability", caccioppoli_stability},
      {"local boundedness certificates", certificates},
      {"schedule and exponent identities", schedule_identities},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2zu  %-42s (%.1fs) %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, secs, out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
