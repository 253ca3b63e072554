#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "ac/potential.hpp"

using namespace ac;

namespace {

// Independent quadrature oracle: adaptive Simpson, no shared code with the
// library's Gauss-Legendre path.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol = 1e-13) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

TEST_CASE("quartic satisfies the double-well invariants") {
  CHECK_NOTHROW(validate_potential(quartic_potential()));
}

TEST_CASE("sigma of the quartic is sqrt(2)/3") {
  const double s = sigma(quartic_potential());
  CHECK(s == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(std::abs(s - 0.4714045) < 1e-6);
  CHECK(std::abs(2.0 * s - 0.9428090) < 1e-6);  // the mass normaliser
}

TEST_CASE("sigma agrees with an independent Simpson oracle") {
  const PotentialSpec pot = quartic_potential();
  const double oracle =
      simpson([&](double t) { return std::sqrt(pot.w(t) / 2.0); }, -1.0, 1.0);
  CHECK(sigma(pot) == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("scaling W by c^2 scales sigma by c") {
  const PotentialSpec base = quartic_potential();
  for (double c : {0.5, 2.0, 3.7}) {
    const PotentialSpec scaled = scaled_potential(base, c);
    CHECK(sigma(scaled) == doctest::Approx(c * sigma(base)).epsilon(1e-12));
  }
}

TEST_CASE("polynomial route reproduces the quartic") {
  // (1 - t^2)^2 / 4 = 1/4 - t^2/2 + t^4/4
  const PotentialSpec poly = polynomial_potential({0.25, 0.0, -0.5, 0.0, 0.25});
  CHECK_NOTHROW(validate_potential(poly));
  CHECK(sigma(poly) == doctest::Approx(sigma(quartic_potential())).epsilon(1e-12));
  for (double t : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
    CHECK(poly.w(t) == doctest::Approx(quartic_potential().w(t)).epsilon(1e-14));
    CHECK(poly.w2(t) == doctest::Approx(quartic_potential().w2(t)).epsilon(1e-14));
  }
}

TEST_CASE("sigma is positive for every valid spec") {
  CHECK(sigma(quartic_potential()) > 0.0);
  CHECK(sigma(scaled_potential(quartic_potential(), 0.1)) > 0.0);
}

TEST_CASE("invalid potentials are rejected") {
  // W = t^2 has no wells at +-1.
  CHECK_THROWS_AS(validate_potential(polynomial_potential({0.0, 0.0, 1.0})),
                  std::invalid_argument);
  // W = -(1 - t^2)^2 / 4 is negative.
  CHECK_THROWS_AS(sigma(polynomial_potential({-0.25, 0.0, 0.5, 0.0, -0.25})),
                  std::invalid_argument);
  // Odd part breaks evenness: W + t^3/10.
  CHECK_THROWS_AS(validate_potential(polynomial_potential({0.25, 0.0, -0.5, 0.1, 0.25})),
                  std::invalid_argument);
}

TEST_CASE("sampled second-derivative bounds of the quartic") {
  CHECK(sup_abs_w2(quartic_potential()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sup_neg_w2(quartic_potential()) == doctest::Approx(1.0).epsilon(1e-9));
}
