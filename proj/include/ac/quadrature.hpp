#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace ac {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
// computed by Newton iteration on the Legendre recurrence.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> rule(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[n - 1 - i] = {x, w};
  }
  return rule;
}

template <class F>
double gl_integrate(F&& f, double a, double b, int n = 20) {
  const auto rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  double acc = 0.0;
  for (const auto& [x, w] : rule) acc += w * f(c + s * x);
  return acc * s;
}

namespace detail {
template <class F>
double adaptive_rec(F& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_integrate(f, a, mid);
  const double right = gl_integrate(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (depth <= 0 || err <= tol * (1.0 + std::abs(left + right)))
    return left + right;
  return adaptive_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive bisection on top of the fixed Gauss-Legendre panel.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double rel_tol = 1e-13,
                          int max_depth = 30) {
  const double whole = gl_integrate(f, a, b);
  return detail::adaptive_rec(f, a, b, whole, rel_tol, max_depth);
}

}  // namespace ac
