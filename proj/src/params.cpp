#include "dsw/params.hpp"

#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

double sigma_threshold(double gamma, int n) {
  return (gamma + 1.0 + static_cast<double>(n)) / (gamma + 1.0);
}

double default_sigma(double gamma, int n) {
  return 2.0 * (static_cast<double>(n) + gamma + 1.0) / (gamma + 1.0);
}

Parameters derive_parameters(double alpha, double gamma, int n, double sigma) {
  std::ostringstream why;
  if (!(alpha > 0.0)) {
    why << "alpha must be positive, got " << alpha;
    throw DomainError(why.str());
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    why << "gamma must lie in (0,1), got " << gamma;
    throw DomainError(why.str());
  }
  if (!(alpha + gamma > 1.0)) {
    why << "slow diffusion requires alpha+gamma > 1, got " << alpha + gamma;
    throw DomainError(why.str());
  }
  if (n != 1 && n != 2) {
    why << "dimension must be 1 or 2, got " << n;
    throw DomainError(why.str());
  }
  if (!(sigma > sigma_threshold(gamma, n))) {
    why << "sigma must exceed (gamma+1+n)/(gamma+1) = " << sigma_threshold(gamma, n)
        << ", got " << sigma;
    throw DomainError(why.str());
  }

  Parameters p;
  p.alpha = alpha;
  p.gamma = gamma;
  p.n = n;
  p.sigma = sigma;
  p.beta = (alpha + gamma) / gamma;
  p.m = (p.beta + 1.0) / p.beta;
  return p;
}

Parameters derive_parameters(double alpha, double gamma, int n) {
  return derive_parameters(alpha, gamma, n, default_sigma(gamma, n));
}

}  // namespace dsw
