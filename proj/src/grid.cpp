#include "ac/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ac/quadrature.hpp"

namespace ac {

Grid build_subgrid(const ReducedGeometry& g, double a, double b, int node_count) {
  if (node_count < 9) throw std::invalid_argument("build_grid: node_count must be >= 9");
  if (!(a < b) || a < g.r_min - 1e-12 || b > g.r_max + 1e-12)
    throw std::invalid_argument("build_grid: interval outside geometry domain");
  Grid grid;
  grid.geom = g;
  const int n = node_count;
  grid.h = (b - a) / (n - 1);
  grid.nodes.resize(n);
  for (int i = 0; i < n; ++i) grid.nodes[i] = a + i * grid.h;
  grid.nodes[n - 1] = b;  // pin the endpoint against accumulation drift

  grid.w_node.resize(n);
  for (int i = 0; i < n; ++i) grid.w_node[i] = g.weight(grid.nodes[i]);
  grid.w_half.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) grid.w_half[i] = g.weight(grid.nodes[i] + 0.5 * grid.h);

  double wmax = 0.0;
  for (double w : grid.w_node) wmax = std::max(wmax, w);
  grid.singular_low = grid.w_node.front() <= 1e-12 * wmax;
  grid.singular_high = grid.w_node.back() <= 1e-12 * wmax;

  grid.mass.resize(n);
  for (int i = 1; i + 1 < n; ++i) grid.mass[i] = grid.h * grid.w_node[i];
  // Half-cell integrals keep the endpoint masses positive and consistent
  // even where w vanishes.
  grid.mass[0] = gl_integrate(g.weight, a, a + 0.5 * grid.h, 8);
  grid.mass[n - 1] = gl_integrate(g.weight, b - 0.5 * grid.h, b, 8);
  for (double m : grid.mass)
    if (!(m > 0.0)) throw std::invalid_argument("build_grid: nonpositive node mass");
  return grid;
}

Grid build_grid(const ReducedGeometry& g, int node_count) {
  return build_subgrid(g, g.r_min, g.r_max, node_count);
}

Profile apply_laplacian(const Grid& g, const Profile& u) {
  const int n = g.count();
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("apply_laplacian: profile size mismatch");
  Profile out(n);
  double flux_prev = 0.0;  // zero flux through the lower boundary
  for (int i = 0; i < n; ++i) {
    const double flux_next =
        (i + 1 < n) ? g.w_half[i] * (u[i + 1] - u[i]) / g.h : 0.0;
    out[i] = (flux_next - flux_prev) / g.mass[i];
    flux_prev = flux_next;
  }
  return out;
}

Profile residual(const Grid& g, const Profile& u, double eps, const PotentialSpec& pot) {
  if (!(eps > 0.0)) throw std::invalid_argument("residual: eps must be positive");
  Profile out = apply_laplacian(g, u);
  for (int i = 0; i < g.count(); ++i) out[i] = eps * out[i] - pot.w1(u[i]) / eps;
  return out;
}

double energy(const Grid& g, const Profile& u, double eps, const PotentialSpec& pot) {
  if (!(eps > 0.0)) throw std::invalid_argument("energy: eps must be positive");
  const int n = g.count();
  double grad = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double s = (u[i + 1] - u[i]) / g.h;
    grad += g.h * g.w_half[i] * s * s;
  }
  double potential = 0.0;
  for (int i = 0; i < n; ++i) potential += g.mass[i] * pot.w(u[i]);
  return g.geom.transverse_volume * (0.5 * eps * grad + potential / eps);
}

double gradient_consistency_check(const Grid& g, const Profile& u, double eps,
                                  const PotentialSpec& pot, int directions,
                                  double step, std::uint64_t seed) {
  const int n = g.count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.15, 0.85);
  double worst = 0.0;
  const double e0 = energy(g, u, eps, pot);
  for (int k = 0; k < directions; ++k) {
    // Interior-supported bump with random centre and width.
    const double c = g.nodes.front() + unif(rng) * (g.nodes.back() - g.nodes.front());
    const double s = 0.05 * (g.nodes.back() - g.nodes.front()) * (0.5 + unif(rng));
    Profile phi(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
      const double t = (g.nodes[i] - c) / s;
      phi[i] = std::exp(-t * t);
    }
    Profile up(u), um(u);
    for (int i = 0; i < n; ++i) {
      up[i] += step * phi[i];
      um[i] -= step * phi[i];
    }
    const double de = (energy(g, up, eps, pot) - energy(g, um, eps, pot)) / (2 * step);
    const Profile res = residual(g, u, eps, pot);
    double inner = 0.0;
    for (int i = 0; i < n; ++i) inner += g.mass[i] * res[i] * phi[i];
    inner *= g.geom.transverse_volume;
    const double denom = std::max({std::abs(de), std::abs(inner), 1e-8 * (1.0 + std::abs(e0))});
    worst = std::max(worst, std::abs(de + inner) / denom);
  }
  return worst;
}

ModeOperator assemble_operator(const Grid& g, const std::function<double(int)>& V,
                               EndpointBC lo, EndpointBC hi) {
  const int n = g.count();
  const int i0 = (lo == EndpointBC::dirichlet) ? 1 : 0;
  const int i1 = (hi == EndpointBC::dirichlet) ? n - 2 : n - 1;
  const int m = i1 - i0 + 1;
  if (m < 3) throw std::invalid_argument("assemble_operator: too few active nodes");
  ModeOperator op;
  op.lo = i0;
  op.T.diag.resize(m);
  op.T.off.resize(m - 1);
  op.sqrt_mass.resize(m);
  for (int k = 0; k < m; ++k) op.sqrt_mass[k] = std::sqrt(g.mass[i0 + k]);
  for (int k = 0; k < m; ++k) {
    const int i = i0 + k;
    // Each existing neighbour flux contributes; a natural boundary has no
    // flux, while a Dirichlet row keeps its coupling into the wall.
    double stiff = 0.0;
    if (i > 0) stiff += g.w_half[i - 1] / g.h;
    if (i + 1 < n) stiff += g.w_half[i] / g.h;
    op.T.diag[k] = stiff / g.mass[i] + V(i);
  }
  for (int k = 0; k + 1 < m; ++k) {
    const int i = i0 + k;
    op.T.off[k] = -g.w_half[i] / (g.h * op.sqrt_mass[k] * op.sqrt_mass[k + 1]);
  }
  return op;
}

double lowest_eigenvalue(const Grid& g, const std::function<double(int)>& V,
                         EndpointBC lo, EndpointBC hi) {
  const ModeOperator op = assemble_operator(g, V, lo, hi);
  auto [glo, ghi] = gershgorin(op.T);
  const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
  double a = glo - 1e-12 * scale, b = ghi + 1e-12 * scale;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (count_below(op.T, mid) >= 1)
      b = mid;
    else
      a = mid;
    if (b - a <= 1e-15 * scale) break;
  }
  return 0.5 * (a + b);
}

Profile interpolate_linear(const Grid& from, const Profile& u, const Grid& to) {
  const int n = from.count();
  Profile out(to.count());
  for (int j = 0; j < to.count(); ++j) {
    const double r = to.nodes[j];
    if (r <= from.nodes.front()) {
      out[j] = u.front();
      continue;
    }
    if (r >= from.nodes.back()) {
      out[j] = u.back();
      continue;
    }
    const int i = std::min(static_cast<int>((r - from.nodes.front()) / from.h), n - 2);
    const double t = (r - from.nodes[i]) / from.h;
    out[j] = (1.0 - t) * u[i] + t * u[i + 1];
  }
  return out;
}

}  // namespace ac
