#include "dsw/verification.hpp"

#include <cmath>
#include <random>

#include "dsw/degiorgi.hpp"
#include "dsw/energy.hpp"
#include "dsw/mollify.hpp"

namespace dsw {

namespace {

std::vector<double> uniform_times(double T, std::size_t K) {
  std::vector<double> t(K);
  for (std::size_t j = 0; j < K; ++j) t[j] = T * static_cast<double>(j) / (K - 1);
  t.back() = T;
  return t;
}

}  // namespace

std::vector<double> fourier_signal_values(std::uint64_t seed,
                                          const std::vector<double>& times) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double T = times.back();
  std::array<double, 4> amp{}, phase{};
  for (int k = 0; k < 4; ++k) {
    amp[k] = uni(rng) / (k + 1.0);
    phase[k] = uni(rng) * 3.141592653589793;
  }
  std::vector<double> vals(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k)
      s += amp[k] * std::sin(2.0 * 3.141592653589793 * (k + 1) * times[j] / T + phase[k]);
    // anchor w(0) = 0 so the kernel's startup layer is first order as well
    vals[j] = s;
  }
  const double w0 = vals.front();
  for (double& v : vals) v -= w0;
  return vals;
}

SuiteResult fast_convergence_suite(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> udelta(0.8, 1.5), ubc(1.5, 4.0);
  std::uniform_real_distribution<double> ubelow(0.05, 0.999), uabove(1.05, 100.0);

  int agree = 0;
  bool at_threshold_ok = true;
  for (int t = 0; t < trials; ++t) {
    const double delta = udelta(rng);
    const double b = ubc(rng);
    const double C = ubc(rng);
    const double thr = std::pow(C, -1.0 / delta) * std::pow(b, -1.0 / (delta * delta));
    double u;
    if (t % 10 == 0)
      u = 1.0;  // exactly at the threshold
    else if (t % 2 == 0)
      u = ubelow(rng);
    else
      u = uabove(rng);
    const double y0 = thr * u;

    const bool verdict = fast_convergence(y0, C, b, delta, 1).converges;

    // independent direct simulation of the extremal recursion
    bool direct = y0 == 0.0;
    double y = y0;
    for (int j = 0; j < 200 && !direct; ++j) {
      y = C * std::pow(b, j) * std::pow(y, 1.0 + delta);
      if (y <= 1e-10 * y0) direct = true;
      if (!std::isfinite(y) || y > 1e100) break;
    }
    if (verdict == direct) ++agree;
    if (u == 1.0 && !direct) at_threshold_ok = false;
  }

  SuiteResult r;
  r.name = "fast_convergence";
  r.passed = agree == trials && at_threshold_ok;
  r.details = {{"trials", trials}, {"agreements", agree}, {"at_threshold_ok", at_threshold_ok}};
  return r;
}

SuiteResult boundary_bounds_suite(std::uint64_t seed, int samples) {
  SuiteResult r;
  r.name = "boundary_bounds";
  bool ok = true;
  for (double beta : {1.5, 3.0, 5.0}) {
    BoundaryBounds bb = check_boundary_bounds(samples, beta, seed);
    const bool fin = std::isfinite(bb.min_ratio) && std::isfinite(bb.max_ratio) &&
                     bb.min_ratio > 0.0 && bb.max_ratio >= bb.min_ratio;
    // sampled ratios live inside [1/(beta+1), beta/(beta+1)]
    const bool envelope = bb.min_ratio > 1.0 / (beta + 1.0) - 1e-9 &&
                          bb.max_ratio < beta / (beta + 1.0) + 1e-9;
    ok = ok && fin && envelope;
    r.details["beta_" + std::to_string(beta)] = {{"min_ratio", bb.min_ratio},
                                                 {"max_ratio", bb.max_ratio}};
  }
  BoundaryBounds b1 = check_boundary_bounds(samples, 1.0, seed);
  const bool half = std::fabs(b1.min_ratio - 0.5) <= 1e-12 &&
                    std::fabs(b1.max_ratio - 0.5) <= 1e-12;
  ok = ok && half;
  r.details["beta_1_exact_half"] = half;
  r.passed = ok;
  return r;
}

SuiteResult mollifier_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "mollifier";
  bool ok = true;

  // derivative identity on small-amplitude closed-form signals
  {
    std::vector<double> t = uniform_times(1.0, 200001);
    TimeSignal one = TimeSignal::scalar(t, std::vector<double>(t.size(), 1e-4));
    const double res = check_time_derivative_identity(one, 1.0);
    r.details["identity_residual_constant"] = res;
    ok = ok && res <= 1e-12;
    TimeSignal zero = TimeSignal::scalar(t, std::vector<double>(t.size(), 0.0));
    ok = ok && check_time_derivative_identity(zero, 0.3) == 0.0;
  }

  // first-order decay of the residual under time refinement
  {
    std::vector<double> tc = uniform_times(1.0, 1001);
    std::vector<double> tf = uniform_times(1.0, 2001);
    TimeSignal wc = TimeSignal::scalar(tc, fourier_signal_values(seed + 1, tc));
    TimeSignal wf = TimeSignal::scalar(tf, fourier_signal_values(seed + 1, tf));
    const double rc = check_time_derivative_identity(wc, 0.1);
    const double rf = check_time_derivative_identity(wf, 0.1);
    const double ratio = rc / rf;
    r.details["identity_refinement_ratio"] = ratio;
    ok = ok && ratio >= 1.6 && ratio <= 2.4;
  }

  // L^p contraction on seeded random signals
  {
    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> uni(-2.0, 3.0);
    int good = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
      std::vector<double> times = uniform_times(1.0, 201);
      std::vector<double> vals(times.size());
      for (double& v : vals) v = uni(rng);
      TimeSignal w = TimeSignal::scalar(times, vals);
      bool all = true;
      for (double p : {1.0, 2.0, 1.5}) {
        auto [lhs, rhs] = check_lp_contraction(w, 0.07, p);
        all = all && lhs <= rhs * (1.0 + 1e-10);
      }
      if (all) ++good;
    }
    r.details["contraction_trials"] = good;
    ok = ok && good == trials;
  }

  // |w_h - w|_p decreasing in h, and bounded by C h with C from the first point
  {
    std::vector<double> t = uniform_times(1.0, 100001);
    std::vector<double> vals(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double s = std::sin(3.141592653589793 * t[j]);
      vals[j] = s * s;  // smooth with w(0) = 0
    }
    TimeSignal w = TimeSignal::scalar(t, vals);
    const double e1 = lp_mollification_error(w, 0.1, 2.0);
    const double e2 = lp_mollification_error(w, 0.01, 2.0);
    const double e3 = lp_mollification_error(w, 0.001, 2.0);
    r.details["convergence_errors"] = {e1, e2, e3};
    const double slope = e1 / 0.1;
    ok = ok && e1 > e2 && e2 > e3 && e2 <= slope * 0.01 * 1.2 && e3 <= slope * 0.001 * 1.2;
  }

  r.passed = ok;
  return r;
}

SuiteResult schedule_identity_suite(std::uint64_t seed, int draws) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ualpha(0.4, 4.0), ugamma(0.05, 0.95);
  std::uniform_real_distribution<double> urho(0.05, 1.0), usig(1.0, 3.0);
  std::uniform_int_distribution<int> udim(1, 2);

  bool ok = true;
  double worst_tau = 0.0, worst_bm = 0.0, min_delta = 1e300;
  int accepted = 0;
  while (accepted < draws) {
    const double alpha = ualpha(rng), gamma = ugamma(rng);
    if (!(alpha + gamma > 1.0)) continue;
    const int n = udim(rng);
    const double sigma = sigma_threshold(gamma, n) * (1.0 + usig(rng));
    Parameters p = derive_parameters(alpha, gamma, n, sigma);
    ++accepted;

    const double rho = urho(rng);
    IterationSchedule s = IterationSchedule::make(rho, p, 12);
    const double tau_err =
        std::fabs(s.tau_j[0] - std::pow(rho, p.m)) / std::max(1.0, std::pow(rho, p.m));
    const double bm_err = std::fabs(p.beta * p.m - (p.beta + 1.0)) / (p.beta + 1.0);
    const double delta = IterationConstants::from(p, 2.0).delta;
    worst_tau = std::max(worst_tau, tau_err);
    worst_bm = std::max(worst_bm, bm_err);
    min_delta = std::min(min_delta, delta);
    ok = ok && tau_err <= 1e-14 && bm_err <= 1e-14 && delta > 0.0;

    // levels rise strictly from zero, radii and half-lengths shrink
    ok = ok && s.level(1.0, 0) == 0.0;
    for (int j = 1; j <= 12; ++j) {
      ok = ok && s.level(1.0, j) > s.level(1.0, j - 1);
      ok = ok && s.rho_j[j] < s.rho_j[j - 1] && s.tau_j[j] < s.tau_j[j - 1];
    }
  }

  SuiteResult r;
  r.name = "schedule_identities";
  r.passed = ok;
  r.details = {{"draws", draws},
               {"worst_tau0_error", worst_tau},
               {"worst_beta_m_error", worst_bm},
               {"min_delta", min_delta}};
  return r;
}

std::vector<SuiteResult> lemma_suites(std::uint64_t seed) {
  return {fast_convergence_suite(seed), boundary_bounds_suite(seed), mollifier_suite(seed),
          schedule_identity_suite(seed)};
}

}  // namespace dsw
