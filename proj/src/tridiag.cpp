#include "ac/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ac/errors.hpp"

namespace ac {

TridiagFactor::TridiagFactor(const Tridiag& t) {
  const std::size_t n = t.size();
  if (t.sub.size() + 1 != n || t.sup.size() + 1 != n)
    throw std::invalid_argument("TridiagFactor: inconsistent band sizes");
  piv_.resize(n);
  sup_ = t.sup;
  sub_.resize(n - 1);
  piv_[0] = t.diag[0];
  min_pivot = std::abs(piv_[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (piv_[i - 1] == 0.0) throw NumericalError("tridiagonal solve: zero pivot");
    sub_[i - 1] = t.sub[i - 1] / piv_[i - 1];
    piv_[i] = t.diag[i] - sub_[i - 1] * t.sup[i - 1];
    min_pivot = std::min(min_pivot, std::abs(piv_[i]));
  }
  if (piv_[n - 1] == 0.0) throw NumericalError("tridiagonal solve: zero pivot");
}

std::vector<double> TridiagFactor::solve(const std::vector<double>& rhs) const {
  const std::size_t n = piv_.size();
  std::vector<double> x(rhs);
  for (std::size_t i = 1; i < n; ++i) x[i] -= sub_[i - 1] * x[i - 1];
  x[n - 1] /= piv_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - sup_[i] * x[i + 1]) / piv_[i];
  return x;
}

std::vector<double> solve_tridiag(const Tridiag& t, const std::vector<double>& rhs) {
  return TridiagFactor(t).solve(rhs);
}

int count_below(const SymTridiag& t, double x) {
  const std::size_t n = t.size();
  // pivmin guards against division blow-up without disturbing the count.
  double emax = 0.0;
  for (double e : t.off) emax = std::max(emax, std::abs(e));
  const double pivmin = std::max(emax * emax, 1.0) * 1e-292;
  int cnt = 0;
  double d = t.diag[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++cnt;
  for (std::size_t i = 1; i < n; ++i) {
    d = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++cnt;
  }
  return cnt;
}

std::pair<double, double> gershgorin(const SymTridiag& t) {
  const std::size_t n = t.size();
  double lo = t.diag[0], hi = t.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

std::vector<double> eigenvalues_below(const SymTridiag& t, double cutoff) {
  auto [glo, ghi] = gershgorin(t);
  const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
  const double hi0 = std::min(cutoff, ghi) + 1e-12 * scale;
  const int k = count_below(t, hi0);
  std::vector<double> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    double lo = glo - 1e-12 * scale, hi = hi0;
    // locate the (j+1)-th eigenvalue: smallest x with count_below(x) >= j+1
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(t, mid) >= j + 1)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 1e-15 * scale) break;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, int iters) {
  const std::size_t n = t.size();
  auto [glo, ghi] = gershgorin(t);
  const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
  // Small off-spectrum shift keeps the factorisation bounded.
  const double shift = lambda + 1e-11 * scale;
  Tridiag a;
  a.diag.resize(n);
  a.sub.assign(t.off.begin(), t.off.end());
  a.sup = a.sub;
  for (std::size_t i = 0; i < n; ++i) a.diag[i] = t.diag[i] - shift;
  // Partial-pivot-free factorisation can fail exactly on-shift; fall back to
  // a slightly larger shift if it does.
  for (int attempt = 0;; ++attempt) {
    try {
      TridiagFactor f(a);
      std::vector<double> v(n, 1.0);
      for (int it = 0; it < iters; ++it) {
        v = f.solve(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NumericalError("inverse iteration: zero vector");
        for (double& x : v) x /= norm;
      }
      return v;
    } catch (const NumericalError&) {
      if (attempt >= 3) throw;
      for (std::size_t i = 0; i < n; ++i) a.diag[i] -= 1e-9 * scale;
    }
  }
}

}  // namespace ac
