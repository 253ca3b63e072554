#pragma once

#include <utility>
#include <vector>

namespace ac {

/// General tridiagonal matrix: sub[i] couples row i+1 to column i,
/// sup[i] couples row i to column i+1.
struct Tridiag {
  std::vector<double> sub, diag, sup;
  std::size_t size() const { return diag.size(); }
};

/// Precomputed Thomas factorisation for repeated solves with the same
/// matrix (used by the semi-implicit flow). The matrices assembled here are
/// strictly diagonally dominant, so pivoting is not needed; min_pivot
/// records the smallest |pivot| encountered for diagnostics.
struct TridiagFactor {
  explicit TridiagFactor(const Tridiag& t);
  std::vector<double> solve(const std::vector<double>& rhs) const;
  double min_pivot = 0.0;

 private:
  std::vector<double> sub_, piv_, sup_;
};

std::vector<double> solve_tridiag(const Tridiag& t, const std::vector<double>& rhs);

/// Symmetric tridiagonal matrix; off[i] couples i and i+1.
struct SymTridiag {
  std::vector<double> diag, off;
  std::size_t size() const { return diag.size(); }
};

// Number of eigenvalues strictly below x (Sturm sequence / LDL^T sign count).
int count_below(const SymTridiag& t, double x);

// [min, max] Gershgorin bounds.
std::pair<double, double> gershgorin(const SymTridiag& t);

// All eigenvalues <= cutoff, ascending, each located by bisection to
// near machine precision relative to the spectral scale.
std::vector<double> eigenvalues_below(const SymTridiag& t, double cutoff);

// Eigenvector for an isolated eigenvalue by shifted inverse iteration,
// normalised to unit Euclidean length. Deterministic start vector.
std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, int iters = 4);

}  // namespace ac
