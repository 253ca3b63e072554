#pragma once

#include <string>
#include <vector>

#include "ac/grid.hpp"

namespace ac {

struct LayerSpec {
  double radius = 0.0;
  int sign = +1;  // orientation of the tanh factor
};

struct NewtonOptions {
  double tol = 1e-10;      // sup-norm residual target
  int max_iter = 80;
  double overshoot = 0.1;  // iterates stay within [-1-overshoot, 1+overshoot]
};

struct SolveResult {
  Profile profile;
  double eps = 0.0;
  int nodes = 0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<LayerSpec> ansatz;
  std::vector<double> residual_history;  // sup norms per accepted step
  std::string message;
};

// Product of sign_i * tanh((r - radius_i) / (sqrt(2) eps)) over the layers;
// the empty product is u = +1. Radii must be strictly increasing and
// interior.
Profile ansatz_profile(const Grid& g, double eps, const std::vector<LayerSpec>& layers);

// Damped Newton on the residual with the tridiagonal Jacobian
// eps Lap_red - (1/eps) W''(u): Armijo backtracking (factor 1/2, floor
// 2^-20) on the sup norm. Requires h <= eps/4. Non-convergence is reported
// in the result, not thrown.
SolveResult newton_solve(const Grid& g, double eps, Profile initial,
                         const PotentialSpec& pot, NewtonOptions opts = {});

// Solves along a strictly decreasing eps list, regridding so h <= eps/4 and
// warm-starting each solve from the previous profile. A failed solve
// truncates the sweep.
std::vector<SolveResult> continuation(const ReducedGeometry& g, const PotentialSpec& pot,
                                      const std::vector<double>& eps_list,
                                      const std::vector<LayerSpec>& seed_layers,
                                      int base_nodes);

// {|W''(0)| / lambda_1}^{1/2}, with lambda_1 the first Dirichlet eigenvalue
// of the weighted reduced Laplacian on the half domain [r_mid, r_max].
double bo_threshold(const ReducedGeometry& g, const PotentialSpec& pot, int nodes);

// Positive solution of the Dirichlet problem on the half domain
// [r_mid, r_max] by monotone iteration from the tanh supersolution, with
// the shifted operator (eps Lap - M), M = sup|W''|/eps, extended to the
// full domain by odd reflection. Requires a reflection-symmetric geometry
// (equatorial, or clifford with p = q), an odd node count, and
// eps < bo_threshold. Loss of positivity is reported, not thrown.
SolveResult brezis_oswald_solve(const Grid& g, double eps, const PotentialSpec& pot);

// Newton from the two-interface ansatz at pi/2 +- offset on an equatorial
// geometry (offset 0 picks the default 5 eps). The converged solution
// vanishes on two hypersurfaces either side of the equator; collapse onto
// the one-layer or constant solution is reported as a demo failure with the
// nodal diagnostics in the message.
SolveResult double_layer_solve(const Grid& g, double eps, const PotentialSpec& pot,
                               double offset = 0.0);

}  // namespace ac
