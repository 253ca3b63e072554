#include "ac/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ac/quadrature.hpp"

namespace ac {

PotentialSpec quartic_potential() {
  PotentialSpec s;
  s.name = "quartic";
  s.w = [](double t) { double a = 1.0 - t * t; return 0.25 * a * a; };
  s.w1 = [](double t) { return t * t * t - t; };
  s.w2 = [](double t) { return 3.0 * t * t - 1.0; };
  s.w3 = [](double t) { return 6.0 * t; };
  return s;
}

PotentialSpec scaled_potential(const PotentialSpec& base, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scaled_potential: c must be positive");
  PotentialSpec s;
  s.name = base.name + "*" + std::to_string(c);
  const double c2 = c * c;
  s.w = [f = base.w, c2](double t) { return c2 * f(t); };
  s.w1 = [f = base.w1, c2](double t) { return c2 * f(t); };
  s.w2 = [f = base.w2, c2](double t) { return c2 * f(t); };
  s.w3 = [f = base.w3, c2](double t) { return c2 * f(t); };
  return s;
}

PotentialSpec polynomial_potential(std::vector<double> coeffs, std::string name) {
  auto deriv = [](const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
    return d;
  };
  auto horner = [](std::vector<double> c) {
    return [c = std::move(c)](double t) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
  };
  const auto c1 = deriv(coeffs), c2 = deriv(c1), c3 = deriv(c2);
  PotentialSpec s;
  s.name = std::move(name);
  s.w = horner(coeffs);
  s.w1 = horner(c1);
  s.w2 = horner(c2);
  s.w3 = horner(c3);
  return s;
}

void validate_potential(const PotentialSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("invalid potential '" + spec.name + "': " + what);
  };
  const double scale = 1.0 + std::abs(spec.w(0.0)) + std::abs(spec.w(2.0));
  if (std::abs(spec.w(1.0)) > 1e-12 * scale || std::abs(spec.w(-1.0)) > 1e-12 * scale)
    fail("W(+-1) != 0");
  for (int i = 0; i <= 400; ++i) {
    const double t = -2.0 + i * 0.01;
    if (std::min(std::abs(t - 1.0), std::abs(t + 1.0)) < 1e-3) continue;
    if (!(spec.w(t) > 0.0)) {
      std::ostringstream os;
      os << "W(" << t << ") = " << spec.w(t) << " is not positive";
      fail(os.str());
    }
    if (std::abs(spec.w(t) - spec.w(-t)) > 1e-12 * scale) fail("W is not even");
  }
  if (!(spec.w2(0.0) < 0.0)) fail("W''(0) is not negative");
  if (!(spec.w2(1.0) > 0.0 && spec.w2(-1.0) > 0.0)) fail("W''(+-1) is not positive");
  // Central-difference consistency of the supplied derivatives.
  const double fd_h = 1e-6;
  for (int i = 0; i <= 40; ++i) {
    const double t = -2.0 + i * 0.1;
    const double dw = (spec.w(t + fd_h) - spec.w(t - fd_h)) / (2 * fd_h);
    const double dw1 = (spec.w1(t + fd_h) - spec.w1(t - fd_h)) / (2 * fd_h);
    if (std::abs(spec.w1(t) - dw) > 1e-6 * (1.0 + std::abs(dw))) fail("w1 inconsistent with W");
    if (std::abs(spec.w2(t) - dw1) > 1e-6 * (1.0 + std::abs(dw1))) fail("w2 inconsistent with w1");
  }
}

double sigma(const PotentialSpec& spec) {
  validate_potential(spec);
  auto integrand = [&](double t) {
    const double v = spec.w(t);
    if (v < -1e-14)
      throw std::invalid_argument("invalid potential '" + spec.name +
                                  "': negative W sample inside (-1, 1)");
    return std::sqrt(std::max(v, 0.0) / 2.0);
  };
  return adaptive_integrate(integrand, -1.0, 1.0, 1e-12);
}

namespace {
double sampled_sup(const std::function<double(double)>& f) {
  double m = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -1.0 + i * 0.001;
    m = std::max(m, f(t));
  }
  return m;
}
}  // namespace

double sup_abs_w2(const PotentialSpec& spec) {
  return sampled_sup([&](double t) { return std::abs(spec.w2(t)); });
}

double sup_neg_w2(const PotentialSpec& spec) {
  return sampled_sup([&](double t) { return std::max(-spec.w2(t), 0.0); });
}

}  // namespace ac
