#pragma once

#include <array>
#include <vector>

#include "dsw/params.hpp"
#include "dsw/problem.hpp"

namespace dsw {

// Face-staggered vector field. Each face stores a full (x,y) vector; only the
// normal component enters the discrete divergence, the tangential one feeds
// the isotropic nonlinearity |G|^(gamma-1). x-faces sit between cells (i-1,j)
// and (i,j) for i in [0, nx]; y-faces analogously in 2D.
struct FluxField {
  Grid grid;
  std::vector<std::array<double, 2>> xface;  // (nx+1) * ny
  std::vector<std::array<double, 2>> yface;  // nx * (ny+1), empty in 1D

  static FluxField zeros(const Grid& g);
  std::size_t xidx(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * (grid.nx() + 1) + i;
  }
  std::size_t yidx(int i, int j) const {
    return static_cast<std::size_t>(j) * grid.nx() + i;
  }
};

// Face values of G = grad(v^beta) + beta v^(alpha/gamma) grad(z), discretized
// in the chain-rule-consistent form beta * vbar^(beta-1) * (du/h) with
// u = v + z and vbar the arithmetic face average of v. A constant surface u
// therefore yields exactly zero on every face. Boundary faces are zero under
// ZeroFlux; under DirichletZeroV they use a dry ghost cell at the local
// topography height. Throws DomainError on negative v.
FluxField combined_gradient(const ScalarField& v, const ScalarField& z,
                            const Parameters& params,
                            BoundaryCondition bc = BoundaryCondition::ZeroFlux);

// A = beta^(-gamma) (|G|^2 + eps^2)^((gamma-1)/2) G per face. For eps = 0 the
// map extends continuously by zero at G = 0.
FluxField vector_field_A(const FluxField& G, const Parameters& params, double eps);

// Finite-volume divergence: sum of outward normal fluxes over the cell faces
// divided by the cell volume.
ScalarField divergence(const FluxField& F);

// L(v) = div(A(v, grad v^beta)), so that the semidiscrete system reads
// d_t v = L(v) + f.
ScalarField spatial_operator(const ScalarField& v, const Problem& problem);

}  // namespace dsw
