#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ac/measures.hpp"
#include "ac/stationary.hpp"

using namespace ac;

namespace {
const PotentialSpec kPot = quartic_potential();
}

TEST_CASE("constant wells carry no mass") {
  const Grid g = build_grid(clifford_geometry(1, 1), 400);
  for (double c : {1.0, -1.0}) {
    const MassReport m = mass_report(g, Profile(g.count(), c), 0.1, kPot);
    CHECK(m.energy == doctest::Approx(0.0));
    CHECK(m.varifold_mass == doctest::Approx(0.0));
    CHECK(m.energy_mass == doctest::Approx(0.0));
  }
}

TEST_CASE("varifold mass + discrepancy = energy mass") {
  const Grid g = build_grid(equatorial_geometry(2), 500);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-0.9, 0.9);
  Profile u(g.count());
  for (int i = 0; i < g.count(); ++i)
    u[i] = unif(rng) * std::sin(g.nodes[i]);
  const MassReport m = mass_report(g, u, 0.17, kPot);
  CHECK(m.varifold_mass >= 0.0);
  CHECK(m.energy_mass ==
        doctest::Approx(m.varifold_mass + m.discrepancy).epsilon(1e-12));
}

TEST_CASE("one-layer clifford solution approaches the limit area") {
  const ReducedGeometry geom = clifford_geometry(1, 1);
  const Grid g = build_grid(geom, 800);
  const double eps = 0.1;
  const SolveResult r = newton_solve(g, eps, ansatz_profile(g, eps, {{M_PI / 4, +1}}), kPot);
  REQUIRE(r.converged);
  const MassReport m = mass_report(g, r.profile, eps, kPot);
  CHECK(m.limit_area == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-12));
  CHECK(m.relative_gap < 0.05);
  CHECK(m.discrepancy >= -1e-10);
  const NodalData nd = nodal_data(g, r.profile);
  CHECK(nd.connected);
  CHECK(nd.separating);
  REQUIRE(nd.radii.size() == 1);
  CHECK(nd.radii[0] == doctest::Approx(M_PI / 4).epsilon(1e-8));
}

TEST_CASE("nodal data basics") {
  const Grid g = build_grid(equatorial_geometry(2), 200);
  CHECK(nodal_data(g, Profile(g.count(), 0.5)).radii.empty());
  CHECK_FALSE(nodal_data(g, Profile(g.count(), 0.5)).separating);
  // linear profile crossing at pi/2
  Profile u(g.count());
  for (int i = 0; i < g.count(); ++i) u[i] = g.nodes[i] - M_PI / 2;
  const NodalData nd = nodal_data(g, u);
  REQUIRE(nd.radii.size() == 1);
  CHECK(nd.radii[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(nd.connected);
}

TEST_CASE("closed-form intersection tests") {
  // the equator meets every torus
  for (double r0 : {0.3, M_PI / 4, 1.2}) {
    const IntersectionResult res = nodal_intersection(M_PI / 2, 0.6, 0.8, r0);
    CHECK(res.intersects);
    CHECK(res.margin > 0.0);
  }
  // axis in the first plane, small sphere: disjoint from the central torus
  const IntersectionResult far = nodal_intersection(M_PI / 6, 1.0, 0.0, M_PI / 4);
  CHECK_FALSE(far.intersects);
  CHECK(far.margin == doctest::Approx(std::cos(M_PI / 4) - std::cos(M_PI / 6)).epsilon(1e-14));
  CHECK_THROWS_AS(nodal_intersection(M_PI / 6, 0.9, 0.9, M_PI / 4), std::invalid_argument);
  CHECK_THROWS_AS(nodal_intersection(0.0, 1.0, 0.0, M_PI / 4), std::invalid_argument);
}

TEST_CASE("Monte-Carlo oracle agrees with the closed form on random triples") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  int resolved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta0 = u01(rng) * M_PI;
    const double alpha = u01(rng) * M_PI / 2;
    const double a1 = std::cos(alpha), a2 = std::sin(alpha);
    const double r0 = u01(rng) * M_PI / 2;
    const IntersectionResult closed = nodal_intersection(theta0, a1, a2, r0);
    const IntersectionResult mc = nodal_intersection_mc(theta0, a1, a2, r0, 100000, trial);
    CHECK(std::abs(closed.margin - mc.margin) < 2e-3);
    if (std::abs(closed.margin) > 2e-3) {
      CHECK(closed.intersects == mc.intersects);
      ++resolved;
    }
  }
  CHECK(resolved >= 90);  // nearly all random triples are decisively classified
}
