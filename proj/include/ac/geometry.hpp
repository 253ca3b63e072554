#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace ac {

enum class EndpointBC { natural, dirichlet };

/// One joint eigenfunction family of the orbit-direction Laplacian. Under
/// separation of variables it contributes the additive potential
/// q(r) = c_cos / cos^2 r + c_sin / sin^2 r to the reduced radial problem,
/// with the stated multiplicity. The boundary rule is natural (reflected
/// regularity, f' = 0) where q stays finite and Dirichlet where q blows up
/// at a coordinate singularity.
struct TransverseMode {
  std::array<int, 2> id{0, 0};  // {l, 0} for equatorial, {l1, l2} for clifford
  double c_cos = 0.0;
  double c_sin = 0.0;
  int multiplicity = 1;
  double q_min = 0.0;  // min of q over the open interval
  EndpointBC bc_low = EndpointBC::natural;
  EndpointBC bc_high = EndpointBC::natural;
  std::string label;

  double q(double r) const {
    double v = 0.0;
    if (c_cos != 0.0) {
      const double c = std::cos(r);
      v += c_cos / (c * c);
    }
    if (c_sin != 0.0) {
      const double s = std::sin(r);
      v += c_sin / (s * s);
    }
    return v;
  }
};

enum class GeometryKind { equatorial, clifford, custom };

/// A symmetry reduction of the round sphere S^{n+1} to a weighted interval.
/// The radial weight carries only the r-dependence of the volume density;
/// the total measure of the transverse orbit factor sits in
/// transverse_volume, so that
///   vol(S^{n+1}) = transverse_volume * integral of weight over [r_min, r_max].
struct ReducedGeometry {
  GeometryKind kind = GeometryKind::custom;
  std::string name;
  int ambient_dim = 0;  // n + 1
  int n = 0;
  int p = 0, q = 0;  // clifford factors, n = p + q
  double r_min = 0.0, r_max = 1.0;
  std::function<double(double)> weight;
  double transverse_volume = 1.0;
  int killing_nullity = 0;
  double limit_area = 0.0;
  double minimal_radius = 0.5;

  // All transverse modes with min q(r) <= bound, sorted by (q_min, id).
  // The family is unbounded, so any finite bound retains finitely many.
  std::vector<TransverseMode> modes_below(double bound) const;
};

// Surface measure of the unit m-sphere.
double sphere_area(int m);

// dim of degree-l spherical harmonics on S^m.
int harmonic_dim(int m, int l);

// Reduction of S^{n+1} by the polar angle about an axis: interval [0, pi],
// weight sin^n, equatorial limit surface at pi/2.
ReducedGeometry equatorial_geometry(int n);

// Reduction of S^{n+1}, n = p + q, by the mutual distance to two orthogonal
// coordinate subspheres: interval [0, pi/2], weight cos^p sin^q, limit
// surface the generalised Clifford torus S^p(sqrt(p/n)) x S^q(sqrt(q/n)).
ReducedGeometry clifford_geometry(int p, int q);

// Flat-weight interval for testing (w = 1 on [0, length], single zero mode).
ReducedGeometry flat_geometry(double length);

// transverse_volume * integral of the weight; equals vol(S^{n+1}) for the
// sphere reductions.
double total_volume_check(const ReducedGeometry& g);

}  // namespace ac
