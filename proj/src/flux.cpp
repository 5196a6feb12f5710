#include "dsw/flux.hpp"

#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"
#include "dsw/parallel.hpp"

namespace dsw {

FluxField FluxField::zeros(const Grid& g) {
  FluxField f;
  f.grid = g;
  f.xface.assign(static_cast<std::size_t>(g.nx() + 1) * g.ny(), {0.0, 0.0});
  if (g.n == 2) f.yface.assign(static_cast<std::size_t>(g.nx()) * (g.ny() + 1), {0.0, 0.0});
  return f;
}

namespace {

// Cell-centered derivative of u along the axis orthogonal to a face, used for
// the tangential gradient component; one-sided at the domain boundary.
double cell_dy(const std::vector<double>& u, const Grid& g, int i, int j) {
  const double hy = g.spacing[1];
  if (j == 0) return (u[g.idx(i, 1)] - u[g.idx(i, 0)]) / hy;
  if (j == g.ny() - 1) return (u[g.idx(i, j)] - u[g.idx(i, j - 1)]) / hy;
  return (u[g.idx(i, j + 1)] - u[g.idx(i, j - 1)]) / (2.0 * hy);
}

double cell_dx(const std::vector<double>& u, const Grid& g, int i, int j) {
  const double hx = g.spacing[0];
  if (i == 0) return (u[g.idx(1, j)] - u[g.idx(0, j)]) / hx;
  if (i == g.nx() - 1) return (u[g.idx(i, j)] - u[g.idx(i - 1, j)]) / hx;
  return (u[g.idx(i + 1, j)] - u[g.idx(i - 1, j)]) / (2.0 * hx);
}

}  // namespace

FluxField combined_gradient(const ScalarField& v, const ScalarField& z,
                            const Parameters& params, BoundaryCondition bc) {
  const Grid& g = v.grid;
  if (z.grid != g) throw DomainError("combined_gradient: v and z grids differ");
  for (std::size_t k = 0; k < v.values.size(); ++k)
    if (v.values[k] < 0.0) {
      std::ostringstream why;
      why << "combined_gradient: negative depth " << v.values[k] << " at cell " << k;
      throw DomainError(why.str());
    }

  const double beta = params.beta;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 0.0;

  std::vector<double> u(v.values.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = v.values[k] + z.values[k];

  FluxField G = FluxField::zeros(g);
  const bool dirichlet = bc == BoundaryCondition::DirichletZeroV;

  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t jb, std::size_t je) {
    for (std::size_t jj = jb; jj < je; ++jj) {
      const int j = static_cast<int>(jj);
      for (int i = 0; i <= nx; ++i) {
        double vbar, dun, dut = 0.0;
        if (i == 0 || i == nx) {
          if (!dirichlet) continue;  // zero-flux boundary face
          // dry ghost cell at the local topography height
          int c = i == 0 ? 0 : nx - 1;
          double vc = v.values[g.idx(c, j)];
          vbar = 0.5 * vc;
          dun = (i == 0 ? vc : -vc) / hx;
        } else {
          const std::size_t L = g.idx(i - 1, j), R = g.idx(i, j);
          vbar = 0.5 * (v.values[L] + v.values[R]);
          dun = (u[R] - u[L]) / hx;
          if (g.n == 2)
            dut = 0.5 * (cell_dy(u, g, i - 1, j) + cell_dy(u, g, i, j));
        }
        const double coeff = vbar == 0.0 ? 0.0 : beta * std::pow(vbar, beta - 1.0);
        G.xface[G.xidx(i, j)] = {coeff * dun, coeff * dut};
      }
    }
  });

  if (g.n == 2) {
    parallel_for(static_cast<std::size_t>(ny + 1), [&](std::size_t jb, std::size_t je) {
      for (std::size_t jj = jb; jj < je; ++jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < nx; ++i) {
          double vbar, dun, dut = 0.0;
          if (j == 0 || j == ny) {
            if (!dirichlet) continue;
            int c = j == 0 ? 0 : ny - 1;
            double vc = v.values[g.idx(i, c)];
            vbar = 0.5 * vc;
            dun = (j == 0 ? vc : -vc) / hy;
          } else {
            const std::size_t L = g.idx(i, j - 1), R = g.idx(i, j);
            vbar = 0.5 * (v.values[L] + v.values[R]);
            dun = (u[R] - u[L]) / hy;
            dut = 0.5 * (cell_dx(u, g, i, j - 1) + cell_dx(u, g, i, j));
          }
          const double coeff = vbar == 0.0 ? 0.0 : beta * std::pow(vbar, beta - 1.0);
          G.yface[G.yidx(i, j)] = {coeff * dut, coeff * dun};
        }
      }
    });
  }
  return G;
}

FluxField vector_field_A(const FluxField& G, const Parameters& params, double eps) {
  const double gamma = params.gamma;
  const double bscale = std::pow(params.beta, -gamma);
  const double eps2 = eps * eps;

  auto map_faces = [&](const std::vector<std::array<double, 2>>& in,
                       std::vector<std::array<double, 2>>& out) {
    parallel_for(in.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const double g2 = in[k][0] * in[k][0] + in[k][1] * in[k][1];
        const double reg = g2 + eps2;
        if (reg == 0.0) {
          out[k] = {0.0, 0.0};  // continuous extension of |G|^(gamma-1) G
          continue;
        }
        const double scale = bscale * std::pow(reg, 0.5 * (gamma - 1.0));
        out[k] = {scale * in[k][0], scale * in[k][1]};
      }
    });
  };

  FluxField A = FluxField::zeros(G.grid);
  map_faces(G.xface, A.xface);
  if (G.grid.n == 2) map_faces(G.yface, A.yface);
  return A;
}

ScalarField divergence(const FluxField& F) {
  const Grid& g = F.grid;
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.spacing[0];
  const double hy = g.n == 2 ? g.spacing[1] : 0.0;
  ScalarField d = ScalarField::zeros(g);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t jb, std::size_t je) {
    for (std::size_t jj = jb; jj < je; ++jj) {
      const int j = static_cast<int>(jj);
      for (int i = 0; i < nx; ++i) {
        double div = (F.xface[F.xidx(i + 1, j)][0] - F.xface[F.xidx(i, j)][0]) / hx;
        if (g.n == 2)
          div += (F.yface[F.yidx(i, j + 1)][1] - F.yface[F.yidx(i, j)][1]) / hy;
        d.values[g.idx(i, j)] = div;
      }
    }
  });
  return d;
}

ScalarField spatial_operator(const ScalarField& v, const Problem& problem) {
  FluxField G = combined_gradient(v, problem.topography, problem.params, problem.boundary);
  FluxField A = vector_field_A(G, problem.params, problem.eps);
  return divergence(A);
}

}  // namespace dsw
