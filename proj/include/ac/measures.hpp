#pragma once

#include <cstdint>
#include <vector>

#include "ac/grid.hpp"

namespace ac {

/// Normalised masses of a solution profile. The varifold mass weighs only
/// the gradient term, (1/2 sigma) tv * integral of w eps (u')^2; the energy
/// mass is E_eps / (2 sigma). Their gap (the equipartition discrepancy)
/// vanishes as eps -> 0; both converge to the area of the limit surface
/// with multiplicity one.
struct MassReport {
  double energy = 0.0;
  double varifold_mass = 0.0;
  double energy_mass = 0.0;
  double discrepancy = 0.0;   // energy_mass - varifold_mass, assembled separately
  double limit_area = 0.0;
  double relative_gap = 0.0;  // |energy_mass - limit_area| / limit_area
};

MassReport mass_report(const Grid& g, const Profile& u, double eps,
                       const PotentialSpec& pot);

/// Zero set of a radial profile: sign-change crossings located by linear
/// interpolation, with |u| <= 1e-13 nodes snapped onto the node. In reduced
/// coordinates every crossing is a separating orbit hypersurface.
struct NodalData {
  std::vector<double> radii;
  bool separating = false;  // at least one crossing
  bool connected = false;   // exactly one crossing
};

NodalData nodal_data(const Grid& g, const Profile& u);

/// Closed-form test whether the geodesic sphere {theta = theta0} about an
/// axis with plane-component norms (a1, a2) meets the torus {r = r0} in
/// S^3: they intersect iff |cos theta0| <= a1 cos r0 + a2 sin r0.
struct IntersectionResult {
  bool intersects = false;
  double margin = 0.0;  // a1 cos r0 + a2 sin r0 - |cos theta0|
};

IntersectionResult nodal_intersection(double theta0, double a1, double a2, double r0);

// Monte-Carlo cross-check: samples the torus in the ambient 4-space and
// compares the attained range of <X, axis> against cos theta0.
// Deterministic for a fixed seed; the sample extremes are reproduced
// identically by the serial and parallel paths.
IntersectionResult nodal_intersection_mc(double theta0, double a1, double a2, double r0,
                                         int samples = 100000,
                                         std::uint64_t seed = 12345,
                                         bool parallel = true);

}  // namespace ac
