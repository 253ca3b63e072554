#include "ac/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ac/parallel.hpp"
#include "ac/potential.hpp"

namespace ac {

MassReport mass_report(const Grid& g, const Profile& u, double eps,
                       const PotentialSpec& pot) {
  MassReport rep;
  const double two_sigma = 2.0 * sigma(pot);
  const double tv = g.geom.transverse_volume;
  const int n = g.count();

  double grad = 0.0;  // integral of w (u')^2 on cell midpoints
  for (int i = 0; i + 1 < n; ++i) {
    const double s = (u[i + 1] - u[i]) / g.h;
    grad += g.h * g.w_half[i] * s * s;
  }
  double potential = 0.0;
  for (int i = 0; i < n; ++i) potential += g.mass[i] * pot.w(u[i]);

  rep.energy = energy(g, u, eps, pot);
  rep.varifold_mass = tv * eps * grad / two_sigma;
  rep.energy_mass = rep.energy / two_sigma;
  // Assembled from its own integrand, W(u)/eps - eps (u')^2 / 2; agrees
  // with energy_mass - varifold_mass to round-off.
  rep.discrepancy = tv * (potential / eps - 0.5 * eps * grad) / two_sigma;
  rep.limit_area = g.geom.limit_area;
  rep.relative_gap = std::abs(rep.energy_mass - rep.limit_area) / rep.limit_area;
  return rep;
}

NodalData nodal_data(const Grid& g, const Profile& u) {
  NodalData data;
  const int n = g.count();
  // Crossings closer than 1.5 h merge (a run of snapped zeros is one
  // hypersurface).
  auto push = [&](double r) {
    if (data.radii.empty() || r - data.radii.back() > 1.5 * g.h)
      data.radii.push_back(r);
  };
  for (int i = 0; i < n; ++i) {
    if (std::abs(u[i]) <= 1e-13) {
      push(g.nodes[i]);
    } else if (i + 1 < n && std::abs(u[i + 1]) > 1e-13 && u[i] * u[i + 1] < 0.0) {
      push(g.nodes[i] + g.h * u[i] / (u[i] - u[i + 1]));
    }
  }
  data.separating = !data.radii.empty();
  data.connected = data.radii.size() == 1;
  return data;
}

namespace {
void check_intersection_args(double theta0, double a1, double a2, double r0) {
  if (!(theta0 > 0.0 && theta0 < M_PI))
    throw std::invalid_argument("nodal_intersection: theta0 must be in (0, pi)");
  if (!(r0 > 0.0 && r0 < 0.5 * M_PI))
    throw std::invalid_argument("nodal_intersection: r0 must be in (0, pi/2)");
  if (a1 < 0.0 || a2 < 0.0 || std::abs(a1 * a1 + a2 * a2 - 1.0) > 1e-9)
    throw std::invalid_argument("nodal_intersection: invalid axis norms");
}
}  // namespace

IntersectionResult nodal_intersection(double theta0, double a1, double a2, double r0) {
  check_intersection_args(theta0, a1, a2, r0);
  IntersectionResult res;
  res.margin = a1 * std::cos(r0) + a2 * std::sin(r0) - std::abs(std::cos(theta0));
  res.intersects = res.margin >= 0.0;
  return res;
}

IntersectionResult nodal_intersection_mc(double theta0, double a1, double a2, double r0,
                                         int samples, std::uint64_t seed, bool parallel) {
  check_intersection_args(theta0, a1, a2, r0);
  // Pre-generate the torus angles serially so the sample set is
  // independent of the execution policy.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::vector<double> phi1(samples), phi2(samples);
  for (int i = 0; i < samples; ++i) {
    phi1[i] = ang(rng);
    phi2[i] = ang(rng);
  }
  // Torus point X = (cos r0 e^{i phi1}, sin r0 e^{i phi2}); with the axis
  // (a1, 0, a2, 0), <X, axis> = a1 cos r0 cos phi1 + a2 sin r0 cos phi2.
  const double c1 = a1 * std::cos(r0), c2 = a2 * std::sin(r0);
  const int chunks = 64;
  std::vector<double> cmin(chunks, 1e300), cmax(chunks, -1e300);
  parallel_for(chunks, parallel, [&](std::size_t c) {
    const int lo = static_cast<int>(c) * samples / chunks;
    const int hi = static_cast<int>(c + 1) * samples / chunks;
    double mn = 1e300, mx = -1e300;
    for (int i = lo; i < hi; ++i) {
      const double v = c1 * std::cos(phi1[i]) + c2 * std::cos(phi2[i]);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    cmin[c] = mn;
    cmax[c] = mx;
  });
  double mn = 1e300, mx = -1e300;
  for (int c = 0; c < chunks; ++c) {
    mn = std::min(mn, cmin[c]);
    mx = std::max(mx, cmax[c]);
  }
  IntersectionResult res;
  const double ct = std::cos(theta0);
  res.intersects = (ct >= mn && ct <= mx);
  res.margin = std::max(mx, -mn) - std::abs(ct);
  return res;
}

}  // namespace ac
