#pragma once

#include <string>

namespace dsw {

// Exponents of the doubly nonlinear model
//   d_t u - div((u-z)^alpha |grad u|^(gamma-1) grad u) = f
// together with the derived structure exponents
//   beta = (alpha+gamma)/gamma   (natural power of the depth v = u-z)
//   m    = (beta+1)/beta         (time scaling of intrinsic cylinders)
// and the data integrability exponent sigma.
struct Parameters {
  double alpha = 1.0;
  double gamma = 0.5;
  int n = 1;  // spatial dimension, 1 or 2
  double sigma = 3.0;
  double beta = 3.0;
  double m = 4.0 / 3.0;
};

// Smallest admissible integrability exponent, (gamma+1+n)/(gamma+1).
double sigma_threshold(double gamma, int n);

// Default sigma, 2(n+gamma+1)/(gamma+1), twice the admissible threshold.
double default_sigma(double gamma, int n);

// Validates (alpha, gamma, n, sigma) and fills in beta and m.
// Requires alpha > 0, gamma in (0,1), alpha+gamma > 1 (slow diffusion),
// n in {1,2} and sigma above the threshold. Throws DomainError otherwise.
Parameters derive_parameters(double alpha, double gamma, int n, double sigma);
Parameters derive_parameters(double alpha, double gamma, int n);

}  // namespace dsw
