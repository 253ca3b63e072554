#include "ac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ac/quadrature.hpp"

namespace ac {

double sphere_area(int m) {
  // |S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
  return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

int harmonic_dim(int m, int l) {
  if (l < 0) return 0;
  if (l == 0) return 1;
  auto binom = [](long long a, long long b) -> long long {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return static_cast<int>(binom(m + l, m) - binom(m + l - 2, m));
}

std::vector<TransverseMode> ReducedGeometry::modes_below(double bound) const {
  std::vector<TransverseMode> out;
  if (kind == GeometryKind::equatorial) {
    for (int l = 0;; ++l) {
      const double c = static_cast<double>(l) * (l + n - 1);
      if (c > bound) break;
      TransverseMode m;
      m.id = {l, 0};
      m.c_sin = c;
      m.multiplicity = harmonic_dim(n, l);
      m.q_min = c;  // attained at pi/2
      m.bc_low = m.bc_high = (l == 0) ? EndpointBC::natural : EndpointBC::dirichlet;
      m.label = "l=" + std::to_string(l);
      out.push_back(m);
    }
  } else if (kind == GeometryKind::clifford) {
    for (int l1 = 0;; ++l1) {
      const double a = static_cast<double>(l1) * (l1 + p - 1);
      if (a > bound) break;
      for (int l2 = 0;; ++l2) {
        const double b = static_cast<double>(l2) * (l2 + q - 1);
        const double qmin = std::pow(std::sqrt(a) + std::sqrt(b), 2);
        if (qmin > bound) break;
        TransverseMode m;
        m.id = {l1, l2};
        m.c_cos = a;
        m.c_sin = b;
        m.multiplicity = harmonic_dim(p, l1) * harmonic_dim(q, l2);
        m.q_min = qmin;
        m.bc_low = (b > 0.0) ? EndpointBC::dirichlet : EndpointBC::natural;
        m.bc_high = (a > 0.0) ? EndpointBC::dirichlet : EndpointBC::natural;
        m.label = "(" + std::to_string(l1) + "," + std::to_string(l2) + ")";
        out.push_back(m);
      }
    }
  } else {
    if (bound >= 0.0) {
      TransverseMode m;
      m.label = "0";
      out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(), [](const TransverseMode& x, const TransverseMode& y) {
    if (x.q_min != y.q_min) return x.q_min < y.q_min;
    return x.id < y.id;
  });
  return out;
}

ReducedGeometry equatorial_geometry(int n) {
  if (n < 2) throw std::invalid_argument("equatorial_geometry: unsupported dimension n < 2");
  ReducedGeometry g;
  g.kind = GeometryKind::equatorial;
  g.name = "equatorial(n=" + std::to_string(n) + ")";
  g.n = n;
  g.ambient_dim = n + 1;
  g.r_min = 0.0;
  g.r_max = M_PI;
  g.weight = [n](double t) { return std::pow(std::sin(t), n); };
  g.transverse_volume = sphere_area(n);
  g.killing_nullity = n + 1;
  g.limit_area = sphere_area(n);
  g.minimal_radius = 0.5 * M_PI;
  return g;
}

ReducedGeometry clifford_geometry(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("clifford_geometry: p, q must be >= 1");
  ReducedGeometry g;
  g.kind = GeometryKind::clifford;
  g.name = "clifford(" + std::to_string(p) + "," + std::to_string(q) + ")";
  g.p = p;
  g.q = q;
  g.n = p + q;
  g.ambient_dim = g.n + 1;
  g.r_min = 0.0;
  g.r_max = 0.5 * M_PI;
  g.weight = [p, q](double t) {
    return std::pow(std::cos(t), p) * std::pow(std::sin(t), q);
  };
  g.transverse_volume = sphere_area(p) * sphere_area(q);
  g.killing_nullity = (p + 1) * (q + 1);
  const double n = g.n;
  g.limit_area = sphere_area(p) * std::pow(p / n, 0.5 * p) * sphere_area(q) *
                 std::pow(q / n, 0.5 * q);
  g.minimal_radius = std::asin(std::sqrt(q / n));
  return g;
}

ReducedGeometry flat_geometry(double length) {
  if (!(length > 0.0)) throw std::invalid_argument("flat_geometry: length must be positive");
  ReducedGeometry g;
  g.kind = GeometryKind::custom;
  g.name = "flat(" + std::to_string(length) + ")";
  g.ambient_dim = 1;
  g.r_min = 0.0;
  g.r_max = length;
  g.weight = [](double) { return 1.0; };
  g.transverse_volume = 1.0;
  g.killing_nullity = 0;
  g.limit_area = 1.0;
  g.minimal_radius = 0.5 * length;
  return g;
}

double total_volume_check(const ReducedGeometry& g) {
  const double integral =
      adaptive_integrate([&](double r) { return g.weight(r); }, g.r_min, g.r_max, 1e-13);
  return g.transverse_volume * integral;
}

}  // namespace ac
