#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ac {

/// Balanced double-well potential W with derivatives up to third order.
/// W is even, nonnegative, vanishes exactly at t = +-1 and has a
/// non-degenerate maximum at the origin. The default family is the quartic
/// W(t) = (1 - t^2)^2 / 4.
struct PotentialSpec {
  std::string name;
  std::function<double(double)> w;   // W
  std::function<double(double)> w1;  // W'
  std::function<double(double)> w2;  // W''
  std::function<double(double)> w3;  // W'''
};

PotentialSpec quartic_potential();

// W_c(t) = c^2 W(t), c > 0. Rescales the normaliser sigma by c.
PotentialSpec scaled_potential(const PotentialSpec& base, double c);

// W(t) = sum_k coeffs[k] t^k. validate_potential checks that the result is
// a balanced double well.
PotentialSpec polynomial_potential(std::vector<double> coeffs,
                                   std::string name = "polynomial");

// Sampled invariant checks: W(+-1) = 0, W > 0 away from the wells on
// [-2, 2], W even, W''(0) < 0, W''(+-1) > 0, and finite-difference
// consistency of w1 against W and w2 against w1. Throws
// std::invalid_argument describing the first violation.
void validate_potential(const PotentialSpec& spec);

// Normalising constant sigma = integral_{-1}^{1} sqrt(W(t)/2) dt.
// W vanishes quadratically at the endpoints, so the integrand is smooth and
// a composite Gauss-Legendre rule with adaptive bisection reaches 1e-10
// relative error. Throws std::invalid_argument on negative W samples.
double sigma(const PotentialSpec& spec);

// Sampled sup over [-1, 1] of |W''|, and of max(-W'', 0).
double sup_abs_w2(const PotentialSpec& spec);
double sup_neg_w2(const PotentialSpec& spec);

}  // namespace ac
