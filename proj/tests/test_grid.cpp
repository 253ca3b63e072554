#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ac/grid.hpp"

using namespace ac;

namespace {

Profile random_smooth(const Grid& g, unsigned seed, double amp = 0.8) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double a = unif(rng), b = unif(rng), c = unif(rng);
  const double span = g.nodes.back() - g.nodes.front();
  Profile u(g.count());
  for (int i = 0; i < g.count(); ++i) {
    const double t = (g.nodes[i] - g.nodes.front()) / span;
    u[i] = amp * (a * std::sin(M_PI * t) + b * std::cos(2 * M_PI * t) * 0.5 +
                  c * t * (1.0 - t));
  }
  return u;
}

}  // namespace

TEST_CASE("grid construction examples") {
  const Grid g9 = build_grid(clifford_geometry(1, 1), 9);
  CHECK(g9.h == doctest::Approx((M_PI / 2) / 8).epsilon(1e-15));
  const Grid g17 = build_grid(equatorial_geometry(2), 17);
  CHECK(g17.nodes[8] == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK_THROWS_AS(build_grid(equatorial_geometry(2), 8), std::invalid_argument);
  // both sphere reductions have singular endpoints
  CHECK(g9.singular_low);
  CHECK(g9.singular_high);
  CHECK(g17.singular_low);
  CHECK(g17.singular_high);
  // node span is exact
  CHECK(g17.h * (g17.count() - 1) == doctest::Approx(M_PI).epsilon(1e-15));
  for (double m : g17.mass) CHECK(m > 0.0);
}

TEST_CASE("residual vanishes on the constant equilibria") {
  const PotentialSpec pot = quartic_potential();
  for (const ReducedGeometry& geom : {equatorial_geometry(2), clifford_geometry(1, 1)}) {
    const Grid g = build_grid(geom, 200);
    for (double c : {1.0, -1.0, 0.0}) {
      const Profile u(g.count(), c);
      for (double r : residual(g, u, 0.3, pot)) CHECK(std::abs(r) < 1e-12);
    }
  }
}

TEST_CASE("heteroclinic profile solves the flat problem") {
  const PotentialSpec pot = quartic_potential();
  const double eps = 0.1;
  // Symbolic substitution: u = tanh(s/(sqrt2 eps)) has
  // u'' = -u (1 - u^2)/eps^2 and W'(u) = -u(1 - u^2), so
  // eps u'' - W'(u)/eps = 0 identically.
  for (double s : {-0.2, 0.0, 0.05, 0.3}) {
    const double u = std::tanh(s / (std::sqrt(2.0) * eps));
    const double upp = -u * (1.0 - u * u) / (eps * eps);
    CHECK(eps * upp - pot.w1(u) / eps == doctest::Approx(0.0).epsilon(1e-12));
  }
  // Discrete residual decreases O(h^2) under refinement once the layer is
  // far from the endpoints in units of eps (boundary flux ~ eps u'(0)/h is
  // then below round-off).
  const ReducedGeometry flat = flat_geometry(1.0);
  const double eps_fine = 0.02;  // layer sits 25 eps from both ends
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int nodes = (1024 << k) + 1;
    const Grid g = build_grid(flat, nodes);
    Profile u(g.count());
    for (int i = 0; i < g.count(); ++i)
      u[i] = std::tanh((g.nodes[i] - 0.5) / (std::sqrt(2.0) * eps_fine));
    double sup = 0.0;
    for (double r : residual(g, u, eps_fine, pot)) sup = std::max(sup, std::abs(r));
    if (k > 0) CHECK(sup < 0.3 * prev);  // ~ 1/4 per doubling
    prev = sup;
  }
  CHECK(prev < 1e-3);  // interior scale h^2 / eps^3, ~1e-5 relative to 1/eps
}

TEST_CASE("energy of constants") {
  const PotentialSpec pot = quartic_potential();
  const Grid g = build_grid(clifford_geometry(1, 1), 2000);
  CHECK(energy(g, Profile(g.count(), 1.0), 0.7, pot) == doctest::Approx(0.0));
  CHECK(energy(g, Profile(g.count(), -1.0), 0.7, pot) == doctest::Approx(0.0));
  // W(0) vol(S^3) = pi^2/2 at eps = 1
  CHECK(energy(g, Profile(g.count(), 0.0), 1.0, pot) ==
        doctest::Approx(M_PI * M_PI / 2).epsilon(1e-6));
}

TEST_CASE("discrete Laplacian is self-adjoint in the mass inner product") {
  for (const ReducedGeometry& geom : {equatorial_geometry(2), clifford_geometry(1, 2)}) {
    const Grid g = build_grid(geom, 64);
    const Profile f = random_smooth(g, 11), h = random_smooth(g, 22);
    const Profile lf = apply_laplacian(g, f), lh = apply_laplacian(g, h);
    double a = 0.0, b = 0.0, scale = 0.0;
    for (int i = 0; i < g.count(); ++i) {
      a += g.mass[i] * lf[i] * h[i];
      b += g.mass[i] * f[i] * lh[i];
      scale += g.mass[i] * std::abs(lf[i] * h[i]);
    }
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + scale));
  }
}

TEST_CASE("gradient consistency") {
  const PotentialSpec pot = quartic_potential();
  const Grid g = build_grid(equatorial_geometry(2), 300);
  // quadratic-exact case: E is even around u = 0, so both sides vanish
  CHECK(gradient_consistency_check(g, Profile(g.count(), 0.0), 0.3, pot, 3) < 1e-9);
  // random smooth profiles, 10 random directions
  CHECK(gradient_consistency_check(g, random_smooth(g, 5), 0.3, pot, 10) < 1e-6);
  const Grid gc = build_grid(clifford_geometry(1, 1), 300);
  CHECK(gradient_consistency_check(gc, random_smooth(gc, 7), 0.2, pot, 10) < 1e-6);
}

TEST_CASE("interpolation onto a finer grid") {
  const ReducedGeometry geom = clifford_geometry(1, 1);
  const Grid coarse = build_grid(geom, 101), fine = build_grid(geom, 201);
  const Profile u = random_smooth(coarse, 3);
  const Profile v = interpolate_linear(coarse, u, fine);
  for (int i = 0; i < coarse.count(); ++i)
    CHECK(v[2 * i] == doctest::Approx(u[i]).epsilon(1e-13));
}
