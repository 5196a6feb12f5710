#include <cmath>
#include <random>

#include "doctest.h"
#include "dsw/errors.hpp"
#include "dsw/flux.hpp"
#include "dsw/scenario.hpp"

using dsw::BoundaryCondition;
using dsw::FluxField;
using dsw::Grid;
using dsw::Parameters;
using dsw::Problem;
using dsw::ScalarField;

namespace {

Problem make_problem(const Grid& g, ScalarField z, ScalarField v0, double eps) {
  Problem p;
  p.params = dsw::derive_parameters(1.0, 0.5, g.n, dsw::default_sigma(0.5, g.n));
  p.grid = g;
  p.topography = std::move(z);
  p.initial_depth = std::move(v0);
  p.eps = eps;
  p.horizon = 1.0;
  return p;
}

}  // namespace

TEST_SUITE("flux") {

TEST_CASE("combined gradient on a linear profile, hand computed") {
  Grid g = Grid::line(4, 1.0);
  ScalarField z = ScalarField::zeros(g);
  ScalarField v = ScalarField::from_function(g, [](std::array<double, 2> x) { return x[0]; });
  Parameters prm = dsw::derive_parameters(1.0, 0.5, 1, 3.0);  // beta = 3
  FluxField G = dsw::combined_gradient(v, z, prm);
  const double h = 0.25;
  for (int i = 1; i < 4; ++i) {
    const double vbar = 0.5 * (v.at(i - 1) + v.at(i));
    const double expected = 3.0 * vbar * vbar * (v.at(i) - v.at(i - 1)) / h;
    CHECK(G.xface[G.xidx(i)][0] == doctest::Approx(expected).epsilon(1e-15));
  }
  CHECK(G.xface[G.xidx(0)][0] == 0.0);  // zero-flux boundary faces
  CHECK(G.xface[G.xidx(4)][0] == 0.0);
}

TEST_CASE("constant surface gives bitwise zero gradient") {
  Grid g = Grid::line(16, 1.0);
  ScalarField z = dsw::topography_preset_field(g, "bump", 0.3);
  ScalarField v = dsw::initial_lake_at_rest(g, z, 0.75);
  Parameters prm = dsw::derive_parameters(1.0, 0.5, 1, 3.0);
  FluxField G = dsw::combined_gradient(v, z, prm);
  for (const auto& f : G.xface) {
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 0.0);
  }
}

TEST_CASE("dry faces carry no gradient, negative depth rejected") {
  Grid g = Grid::line(8, 1.0);
  ScalarField z = ScalarField::zeros(g);
  ScalarField v = ScalarField::zeros(g);
  v.at(3) = 1.0;  // single wet cell
  Parameters prm = dsw::derive_parameters(1.0, 0.5, 1, 3.0);
  FluxField G = dsw::combined_gradient(v, z, prm);
  CHECK(G.xface[G.xidx(1)][0] == 0.0);  // both cells dry
  CHECK(G.xface[G.xidx(3)][0] != 0.0);  // wet-dry face, vbar > 0
  CHECK(G.xface[G.xidx(6)][0] == 0.0);

  v.at(5) = -1e-9;
  CHECK_THROWS_AS(dsw::combined_gradient(v, z, prm), dsw::DomainError);
}

TEST_CASE("vector field values") {
  Grid g = Grid::rect(4, 4);
  Parameters prm = dsw::derive_parameters(1.0, 0.5, 2, 4.0);  // beta 3, gamma 0.5
  FluxField G = FluxField::zeros(g);
  G.xface[G.xidx(1, 0)] = {4.0, 0.0};
  FluxField A = dsw::vector_field_A(G, prm, 0.0);
  // beta^-gamma |G|^(gamma-1) G = 3^-0.5 * 4^-0.5 * 4 = 2/sqrt(3)
  CHECK(A.xface[A.xidx(1, 0)][0] ==
        doctest::Approx(1.1547005383792515).epsilon(1e-14));
  CHECK(A.xface[A.xidx(1, 0)][1] == 0.0);
  CHECK(A.xface[A.xidx(2, 2)][0] == 0.0);  // zero G maps to zero
}

TEST_CASE("degenerate modulus identity |A| = beta^-gamma |G|^gamma") {
  Grid g = Grid::line(64, 1.0);
  Parameters prm = dsw::derive_parameters(2.0, 0.7, 1, 4.0);
  FluxField G = FluxField::zeros(g);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (auto& f : G.xface) f[0] = uni(rng);
  FluxField A = dsw::vector_field_A(G, prm, 0.0);
  const double scale = std::pow(prm.beta, -prm.gamma);
  for (std::size_t k = 0; k < G.xface.size(); ++k) {
    const double mag = std::fabs(A.xface[k][0]);
    const double expected = scale * std::pow(std::fabs(G.xface[k][0]), prm.gamma);
    CHECK(mag == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("eps regularization converges quadratically in eps/|G|") {
  Grid g = Grid::line(8, 1.0);
  Parameters prm = dsw::derive_parameters(1.0, 0.5, 1, 3.0);
  FluxField G = FluxField::zeros(g);
  for (int i = 1; i < 8; ++i) G.xface[G.xidx(i)][0] = 0.1 + 0.4 * i;
  FluxField A0 = dsw::vector_field_A(G, prm, 0.0);
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    FluxField Ae = dsw::vector_field_A(G, prm, eps);
    for (int i = 1; i < 8; ++i) {
      const double mag = std::fabs(G.xface[G.xidx(i)][0]);
      const double err = std::fabs(Ae.xface[A0.xidx(i)][0] - A0.xface[A0.xidx(i)][0]);
      CHECK(err <= std::fabs(A0.xface[A0.xidx(i)][0]) * (eps * eps) / (mag * mag));
    }
  }
}

TEST_CASE("divergence of constant and linear flux") {
  Grid g = Grid::line(8, 2.0);
  FluxField F = FluxField::zeros(g);
  for (int i = 0; i <= 8; ++i) F.xface[F.xidx(i)][0] = 3.7;
  ScalarField d = dsw::divergence(F);
  for (double x : d.values) CHECK(x == 0.0);

  for (int i = 0; i <= 8; ++i) F.xface[F.xidx(i)][0] = g.origin[0] + i * g.spacing[0];
  d = dsw::divergence(F);
  for (double x : d.values) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("divergence matches a dense stencil oracle in 2D") {
  Grid g = Grid::rect(6, 5, 1.2, 1.0);
  FluxField F = FluxField::zeros(g);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& f : F.xface) f = {uni(rng), uni(rng)};
  for (auto& f : F.yface) f = {uni(rng), uni(rng)};
  ScalarField d = dsw::divergence(F);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) {
      const double expect =
          (F.xface[F.xidx(i + 1, j)][0] - F.xface[F.xidx(i, j)][0]) / g.spacing[0] +
          (F.yface[F.yidx(i, j + 1)][1] - F.yface[F.yidx(i, j)][1]) / g.spacing[1];
      CHECK(d.at(i, j) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("spatial operator equals a brute-force 1D stencil on a hat profile") {
  Grid g = Grid::line(8, 1.0);
  ScalarField z = ScalarField::zeros(g);
  ScalarField v = ScalarField::from_function(g, [](std::array<double, 2> x) {
    return std::max(0.0, 1.0 - 4.0 * std::fabs(x[0] - 0.5));
  });
  Problem p = make_problem(g, z, v, 0.0);
  ScalarField L = dsw::spatial_operator(v, p);

  // independent dense evaluation of div(beta^-g |G|^(g-1) G), G = b vbar^(b-1) du/h
  const double beta = p.params.beta, gamma = p.params.gamma, h = g.spacing[0];
  std::vector<double> a(9, 0.0);
  for (int i = 1; i < 8; ++i) {
    const double vbar = 0.5 * (v.at(i - 1) + v.at(i));
    const double G = beta * std::pow(vbar, beta - 1.0) * (v.at(i) - v.at(i - 1)) / h;
    a[i] = G == 0.0 ? 0.0
                    : std::pow(beta, -gamma) * std::pow(std::fabs(G), gamma - 1.0) * G;
  }
  for (int i = 0; i < 8; ++i)
    CHECK(L.at(i) == doctest::Approx((a[i + 1] - a[i]) / h).epsilon(1e-14));
}

TEST_CASE("well-balancedness: resting surface is an exact steady state") {
  // quantized topography: the rest state is representable exactly
  Grid g1 = Grid::line(32, 1.0);
  ScalarField z1 = dsw::topography_preset_field(g1, "bump", 0.3);
  Problem p1 = make_problem(g1, z1, dsw::initial_lake_at_rest(g1, z1, 0.75), 1e-8);
  ScalarField L1 = dsw::spatial_operator(p1.initial_depth, p1);
  for (double x : L1.values) CHECK(x == 0.0);

  // generic topography: rounding-level residual only
  Grid g2 = Grid::rect(12, 10, 1.0, 1.0);
  ScalarField z2 = ScalarField::from_function(g2, [](std::array<double, 2> x) {
    return 0.3 * std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + 0.3;
  });
  ScalarField v2 = ScalarField::zeros(g2);
  for (std::size_t k = 0; k < v2.values.size(); ++k) v2.values[k] = 1.0 - z2.values[k];
  Problem p2 = make_problem(g2, z2, v2, 1e-8);
  ScalarField L2 = dsw::spatial_operator(v2, p2);
  for (double x : L2.values) CHECK(std::fabs(x) <= 1e-13);
}

TEST_CASE("dry domain maps to zero") {
  Grid g = Grid::rect(6, 6);
  ScalarField z = dsw::topography_preset_field(g, "bump", 0.2);
  Problem p = make_problem(g, z, ScalarField::zeros(g), 0.0);
  ScalarField L = dsw::spatial_operator(p.initial_depth, p);
  for (double x : L.values) CHECK(x == 0.0);
}

TEST_CASE("discrete divergence telescopes to the boundary flux") {
  Grid g = Grid::line(64, 1.0);
  ScalarField z = ScalarField::zeros(g);
  ScalarField v = dsw::initial_dam_break(g, z, 1.0, 0.0, 0.5);
  Problem p = make_problem(g, z, v, 1e-2);
  ScalarField L = dsw::spatial_operator(v, p);
  long double total = 0.0L, scale = 0.0L;
  for (double x : L.values) {
    total += x;
    scale += std::fabs(x);
  }
  // zero-flux boundary: the cell sums cancel exactly up to rounding
  CHECK(std::fabs(static_cast<double>(total)) <=
        1e-12 * std::max(1.0, static_cast<double>(scale)));
}

TEST_CASE("dirichlet boundary drains a constant pool") {
  Grid g = Grid::line(8, 1.0);
  ScalarField z = ScalarField::zeros(g);
  ScalarField v = ScalarField::constant(g, 1.0);
  Problem p = make_problem(g, z, v, 0.0);
  p.boundary = BoundaryCondition::DirichletZeroV;
  ScalarField L = dsw::spatial_operator(v, p);
  CHECK(L.at(0) < 0.0);  // outflow through the left wall
  CHECK(L.at(7) < 0.0);
  for (int i = 1; i < 7; ++i) CHECK(L.at(i) == 0.0);
}

}
