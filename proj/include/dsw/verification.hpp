#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsw/params.hpp"

namespace dsw {

struct SuiteResult {
  std::string name;
  bool passed = false;
  nlohmann::json details;
};

// Randomized corroboration of the geometric-convergence lemma: the closed-form
// smallness threshold must agree with direct simulation of the extremal
// recursion on every seeded trial (trials drawn away from the thin band where
// the sufficient condition is not necessary).
SuiteResult fast_convergence_suite(std::uint64_t seed, int trials = 100);

// Two-sided comparability of the boundary quantity, including the exact
// ratio 1/2 at beta = 1.
SuiteResult boundary_bounds_suite(std::uint64_t seed, int samples = 10000);

// Derivative identity, L^p contraction and h-convergence of the exponential
// time mollification.
SuiteResult mollifier_suite(std::uint64_t seed);

// Schedule and exponent identities (tau_0 = rho^m, beta*m = beta+1, delta > 0)
// over random admissible parameter draws.
SuiteResult schedule_identity_suite(std::uint64_t seed, int draws = 100);

std::vector<SuiteResult> lemma_suites(std::uint64_t seed);

// Deterministic smooth test signal used by the mollifier suites: a seeded
// low-order Fourier sum with w(0) = 0, sampled at uniform spacing.
std::vector<double> fourier_signal_values(std::uint64_t seed, const std::vector<double>& times);

}  // namespace dsw
