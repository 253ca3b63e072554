#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ac/geometry.hpp"
#include "ac/potential.hpp"
#include "ac/tridiag.hpp"

namespace ac {

/// Radial function sampled at the grid nodes.
using Profile = std::vector<double>;

/// Uniform discretisation of (a sub-interval of) a reduced geometry.
///
/// The weighted Laplacian (1/w)(w f')' is discretised in conservative flux
/// form: flux_{i+1/2} = w(mid) (f_{i+1} - f_i)/h, and each node carries the
/// weight measure of its cell (interior: h w_i; endpoints: the half-cell
/// integral of w, which stays positive at singular endpoints where w
/// itself vanishes). Zero boundary flux encodes the reflected regularity
/// condition f' = 0. The resulting operator is self-adjoint in the inner
/// product <f, g> = sum_i mass_i f_i g_i and second-order consistent,
/// including at coordinate singularities.
struct Grid {
  ReducedGeometry geom;
  std::vector<double> nodes;
  double h = 0.0;
  std::vector<double> w_node;  // weight samples at nodes
  std::vector<double> w_half;  // weight at cell midpoints
  std::vector<double> mass;    // weight measure lumped per node
  bool singular_low = false, singular_high = false;

  int count() const { return static_cast<int>(nodes.size()); }
};

// Uniform grid over the full interval of g. node_count >= 16.
Grid build_grid(const ReducedGeometry& g, int node_count);

// Uniform grid over [a, b] inside the interval of g (Brezis-Oswald half
// domains). node_count >= 16.
Grid build_subgrid(const ReducedGeometry& g, double a, double b, int node_count);

// (1/w)(w u')' with zero-flux boundaries.
Profile apply_laplacian(const Grid& g, const Profile& u);

// eps * Lap_red u - (1/eps) W'(u), nodewise. The base residual for
// transversally invariant functions; mode potentials are not included.
Profile residual(const Grid& g, const Profile& u, double eps, const PotentialSpec& pot);

// transverse_volume * sum of w [ (eps/2) (u')^2 + W(u)/eps ], with the
// gradient term on cell midpoints and the potential term against the node
// masses. This quadrature is the exact antiderivative of -<residual, .> in
// the mass inner product.
double energy(const Grid& g, const Profile& u, double eps, const PotentialSpec& pot);

// Max over `directions` random interior bump directions phi of the relative
// mismatch between the central finite difference of energy and
// -transverse_volume <residual, phi>_mass. Validates the discrete gradient
// structure; expected <= 1e-6 at step 1e-5.
double gradient_consistency_check(const Grid& g, const Profile& u, double eps,
                                  const PotentialSpec& pot, int directions = 10,
                                  double step = 1e-5, std::uint64_t seed = 2024);

/// Symmetric form of -Lap_red + V restricted to the active nodes (a
/// Dirichlet endpoint drops its node). T = M^{1/2} (-Lap + V) M^{-1/2} is
/// symmetric tridiagonal; eigenvectors map back through sqrt_mass.
struct ModeOperator {
  SymTridiag T;
  int lo = 0;  // index of the first active node
  std::vector<double> sqrt_mass;

  int active() const { return static_cast<int>(T.diag.size()); }
};

ModeOperator assemble_operator(const Grid& g, const std::function<double(int)>& V,
                               EndpointBC lo, EndpointBC hi);

// Smallest eigenvalue of -Lap_red + V under the given boundary rules.
double lowest_eigenvalue(const Grid& g, const std::function<double(int)>& V,
                         EndpointBC lo, EndpointBC hi);

// Nodewise linear interpolation onto another grid over the same interval.
Profile interpolate_linear(const Grid& from, const Profile& u, const Grid& to);

}  // namespace ac
