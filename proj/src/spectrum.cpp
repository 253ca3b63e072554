#include "ac/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "ac/errors.hpp"
#include "ac/parallel.hpp"

namespace ac {

namespace {

// eps^{-2} W''(u_i) sampled on the grid.
std::vector<double> base_potential(const Grid& g, const Profile& u, double eps,
                                   const PotentialSpec& pot) {
  std::vector<double> v(g.count());
  for (int i = 0; i < g.count(); ++i) v[i] = pot.w2(u[i]) / (eps * eps);
  return v;
}

ModeOperator mode_operator(const Grid& g, const std::vector<double>& base,
                           const TransverseMode& mode) {
  return assemble_operator(
      g,
      [&](int i) { return base[i] + mode.q(g.nodes[i]); },
      mode.bc_low, mode.bc_high);
}

std::vector<ModeEigenvalues> sweep_modes(const Grid& g, const std::vector<double>& base,
                                         const std::vector<TransverseMode>& modes,
                                         double cutoff, bool parallel) {
  std::vector<ModeEigenvalues> out(modes.size());
  std::vector<std::exception_ptr> errors(modes.size());
  parallel_for(modes.size(), parallel, [&](std::size_t k) {
    try {
      const ModeOperator op = mode_operator(g, base, modes[k]);
      out[k].mode = modes[k];
      out[k].cutoff = cutoff;
      out[k].eigenvalues = eigenvalues_below(op.T, cutoff);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (errors[k]) {
      try {
        std::rethrow_exception(errors[k]);
      } catch (const std::exception& e) {
        throw NumericalError("mode " + modes[k].label + ": " + e.what());
      }
    }
  }
  return out;
}

// Central-difference derivative of u; one-sided rows are irrelevant for
// layer profiles (u' decays exponentially at the ends) but kept consistent.
Profile d_dr(const Grid& g, const Profile& u) {
  const int n = g.count();
  Profile d(n);
  d[0] = (u[1] - u[0]) / g.h;
  for (int i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2 * g.h);
  d[n - 1] = (u[n - 1] - u[n - 2]) / g.h;
  return d;
}

double rayleigh_quotient(const Grid& g, const std::vector<double>& base,
                         const TransverseMode& mode, const Profile& f) {
  const ModeOperator op = mode_operator(g, base, mode);
  const int m = op.active();
  // v = M^{1/2} f restricted to the active nodes
  std::vector<double> v(m);
  for (int k = 0; k < m; ++k) v[k] = op.sqrt_mass[k] * f[op.lo + k];
  double num = 0.0, den = 0.0;
  for (int k = 0; k < m; ++k) {
    double tv = op.T.diag[k] * v[k];
    if (k > 0) tv += op.T.off[k - 1] * v[k - 1];
    if (k + 1 < m) tv += op.T.off[k] * v[k + 1];
    num += v[k] * tv;
    den += v[k] * v[k];
  }
  if (den == 0.0) throw NumericalError("rayleigh quotient of a zero candidate");
  return num / den;
}

int count_index(const std::vector<ModeEigenvalues>& sweep, double zero_tol) {
  int idx = 0;
  for (const auto& me : sweep)
    for (double lam : me.eigenvalues)
      if (lam < -zero_tol) idx += me.mode.multiplicity;
  return idx;
}

Grid doubled_grid(const Grid& g) {
  return build_subgrid(g.geom, g.nodes.front(), g.nodes.back(), 2 * g.count() - 1);
}

}  // namespace

ModeEigenvalues mode_eigenvalues(const Grid& g, const Profile& u, double eps,
                                 const PotentialSpec& pot, const TransverseMode& mode,
                                 double cutoff) {
  if (!(eps > 0.0) || g.h > eps / 4.0 + 1e-15)
    throw std::invalid_argument("mode_eigenvalues: requires h <= eps/4");
  const auto base = base_potential(g, u, eps, pot);
  ModeEigenvalues me;
  me.mode = mode;
  me.cutoff = cutoff;
  me.eigenvalues = eigenvalues_below(mode_operator(g, base, mode).T, cutoff);
  return me;
}

Profile mode_eigenvector(const Grid& g, const Profile& u, double eps,
                         const PotentialSpec& pot, const TransverseMode& mode,
                         double lambda) {
  const auto base = base_potential(g, u, eps, pot);
  const ModeOperator op = mode_operator(g, base, mode);
  const std::vector<double> v = inverse_iteration(op.T, lambda);
  Profile f(g.count(), 0.0);
  for (int k = 0; k < op.active(); ++k) f[op.lo + k] = v[k] / op.sqrt_mass[k];
  double sup = 0.0, mean = 0.0;
  for (double x : f) {
    sup = std::max(sup, std::abs(x));
    mean += x;
  }
  if (sup == 0.0) throw NumericalError("mode_eigenvector: zero vector");
  const double sign = (mean < 0.0) ? -1.0 : 1.0;
  for (double& x : f) x *= sign / sup;
  return f;
}

std::pair<double, Profile> ground_state(const Grid& g, const Profile& u, double eps,
                                        const PotentialSpec& pot,
                                        const TransverseMode& mode) {
  const auto base = base_potential(g, u, eps, pot);
  const ModeOperator op = mode_operator(g, base, mode);
  auto [glo, ghi] = gershgorin(op.T);
  const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
  double a = glo - 1e-12 * scale, b = ghi + 1e-12 * scale;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (count_below(op.T, mid) >= 1)
      b = mid;
    else
      a = mid;
    if (b - a <= 1e-15 * scale) break;
  }
  const double lambda = 0.5 * (a + b);
  return {lambda, mode_eigenvector(g, u, eps, pot, mode, lambda)};
}

std::vector<KillingCandidate> killing_modes(const Grid& g, const Profile& u, double eps,
                                            const PotentialSpec& pot) {
  std::vector<KillingCandidate> out;
  const ReducedGeometry& geom = g.geom;
  if (geom.kind == GeometryKind::custom) return out;
  const Profile du = d_dr(g, u);
  double sup = 0.0;
  for (double x : du) sup = std::max(sup, std::abs(x));
  if (sup <= 1e-10) return out;  // constants generate no rotations

  // The rotation fields that move the limit surface pair u'(r) with first
  // harmonics of the orbit factor(s): mode l = 1 for the equatorial
  // reduction, mode (1, 1) for the clifford reduction. In both cases
  // (w'/w)' = -q(r) for that mode, so differentiating the reduced equation
  // shows u'(r) is an exact continuum kernel element.
  const bool equatorial = geom.kind == GeometryKind::equatorial;
  const double bound =
      equatorial ? static_cast<double>(geom.n)
                 : std::pow(std::sqrt(static_cast<double>(geom.p)) +
                                std::sqrt(static_cast<double>(geom.q)),
                            2);
  const std::array<int, 2> want =
      equatorial ? std::array<int, 2>{1, 0} : std::array<int, 2>{1, 1};
  const auto base = base_potential(g, u, eps, pot);
  for (const auto& mode : geom.modes_below(bound + 1.0)) {
    if (mode.id != want) continue;
    KillingCandidate cand;
    cand.mode = mode;
    cand.radial = du;
    cand.rayleigh = rayleigh_quotient(g, base, mode, du);
    out.push_back(std::move(cand));
    break;
  }
  return out;
}

SpectrumReport assemble(const Grid& g, const Profile& u, double eps,
                        const PotentialSpec& pot, AssembleOptions opts) {
  if (!(eps > 0.0) || g.h > eps / 4.0 + 1e-15)
    throw std::invalid_argument("assemble: requires h <= eps/4");
  SpectrumReport rep;
  rep.eps = eps;
  rep.geometry = g.geom.name;
  rep.killing_nullity_expected = g.geom.killing_nullity;
  rep.truncation_bound = sup_neg_w2(pot) / (eps * eps);

  const auto modes = g.geom.modes_below(rep.truncation_bound);
  const auto base = base_potential(g, u, eps, pot);
  auto coarse = sweep_modes(g, base, modes, opts.eigen_cutoff, opts.parallel);

  // Doubled-grid pass: h -> h/2 exactly; eigenvalues are extrapolated
  // pairwise (the leading error is O(h^2)).
  std::vector<ModeEigenvalues> fine;
  Grid gf;
  Profile uf;
  if (opts.richardson) {
    gf = doubled_grid(g);
    uf = interpolate_linear(g, u, gf);
    const auto base_f = base_potential(gf, uf, eps, pot);
    fine = sweep_modes(gf, base_f, modes, opts.eigen_cutoff, opts.parallel);
    rep.modes = fine;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      auto& ev = rep.modes[k].eigenvalues;
      const auto& cv = coarse[k].eigenvalues;
      for (std::size_t j = 0; j < ev.size(); ++j)
        if (j < cv.size()) ev[j] = (4.0 * ev[j] - cv[j]) / 3.0;
    }
  } else {
    rep.modes = coarse;
  }

  // Zero-classification policy. kappa is computed on the finest grid in
  // play; each Killing candidate marks the eigenvalue of its own mode that
  // lies closest to its Rayleigh quotient as rotation-generated.
  const Grid& gk = opts.richardson ? gf : g;
  const Profile& uk = opts.richardson ? uf : u;
  const auto candidates = killing_modes(gk, uk, eps, pot);
  double kappa = 0.0;
  for (const auto& c : candidates) {
    rep.killing_rayleigh.push_back(c.rayleigh);
    kappa = std::max(kappa, std::abs(c.rayleigh));
  }
  double mu = opts.eigen_cutoff;
  for (const auto& me : rep.modes) {
    std::optional<std::size_t> aligned;
    for (const auto& c : candidates) {
      if (c.mode.id != me.mode.id || me.eigenvalues.empty()) continue;
      std::size_t best = 0;
      for (std::size_t j = 1; j < me.eigenvalues.size(); ++j)
        if (std::abs(me.eigenvalues[j] - c.rayleigh) <
            std::abs(me.eigenvalues[best] - c.rayleigh))
          best = j;
      aligned = best;
    }
    for (std::size_t j = 0; j < me.eigenvalues.size(); ++j) {
      if (aligned && *aligned == j) continue;
      mu = std::min(mu, std::abs(me.eigenvalues[j]));
    }
  }
  if (kappa > 0.0 && mu / kappa < opts.ratio_min) {
    std::ostringstream os;
    os << "indeterminate nullity: smallest non-Killing |eigenvalue| " << mu
       << " is not separated from the Killing scale " << kappa << " (ratio "
       << mu / kappa << " < " << opts.ratio_min << ")";
    throw IndeterminateNullity(os.str());
  }
  rep.zero_tol = (kappa > 0.0) ? std::sqrt(kappa * std::max(mu, 0.0)) : 0.0;

  for (const auto& me : rep.modes)
    for (double lam : me.eigenvalues) {
      if (lam < -rep.zero_tol)
        rep.index += me.mode.multiplicity;
      else if (lam <= rep.zero_tol)
        rep.nullity += me.mode.multiplicity;
    }
  rep.index_coarse = count_index(coarse, rep.zero_tol);
  rep.index_fine = opts.richardson ? count_index(fine, rep.zero_tol) : rep.index_coarse;
  return rep;
}

ConstantSpectrumReport constant_spectrum_oracle(const ReducedGeometry& g, int levels,
                                                int nodes, bool parallel) {
  if (levels < 1 || levels > 6)
    throw std::invalid_argument("constant_spectrum_oracle: levels must be in [1, 6]");
  ConstantSpectrumReport rep;
  const int n = g.n;
  const int m = g.ambient_dim;  // ambient sphere S^m, m = n+1
  // Laplacian levels on S^m: k(k + m - 1) = k(k + n), harmonic multiplicity.
  for (int k = 0; k < levels; ++k)
    rep.ambient.push_back({static_cast<double>(k) * (k + n), harmonic_dim(m, k)});

  const double top = rep.ambient.back().value;
  const Grid grid = build_grid(g, nodes);
  const Grid grid_f = build_subgrid(g, g.r_min, g.r_max, 2 * nodes - 1);
  const std::vector<double> zero_c(grid.count(), 0.0);
  const std::vector<double> zero_f(grid_f.count(), 0.0);
  const auto modes = g.modes_below(top + 0.5);
  const auto coarse = sweep_modes(grid, zero_c, modes, top + 1.0, parallel);
  auto fine = sweep_modes(grid_f, zero_f, modes, top + 1.0, parallel);
  for (std::size_t k = 0; k < modes.size(); ++k)
    for (std::size_t j = 0; j < fine[k].eigenvalues.size(); ++j)
      if (j < coarse[k].eigenvalues.size())
        fine[k].eigenvalues[j] =
            (4.0 * fine[k].eigenvalues[j] - coarse[k].eigenvalues[j]) / 3.0;

  // Cluster the multiplicity-weighted union into levels. Ambient gaps are
  // >= 3, so an absolute radius of 0.5 is safe for levels <= 6.
  std::vector<std::pair<double, int>> all;
  for (std::size_t k = 0; k < modes.size(); ++k)
    for (double lam : fine[k].eigenvalues)
      if (lam <= top + 0.5) all.push_back({lam, modes[k].multiplicity});
  std::sort(all.begin(), all.end());
  for (const auto& [lam, mult] : all) {
    if (!rep.computed.empty() && std::abs(lam - rep.computed.back().value) < 0.5) {
      auto& lv = rep.computed.back();
      lv.value = (lv.value * lv.multiplicity + lam * mult) / (lv.multiplicity + mult);
      lv.multiplicity += mult;
    } else {
      rep.computed.push_back({lam, mult});
    }
  }

  rep.multiplicities_match = rep.computed.size() >= rep.ambient.size();
  for (std::size_t k = 0; k < rep.ambient.size(); ++k) {
    if (k >= rep.computed.size()) break;
    const double denom = std::max(std::abs(rep.ambient[k].value), 1.0);
    rep.max_rel_err = std::max(
        rep.max_rel_err, std::abs(rep.computed[k].value - rep.ambient[k].value) / denom);
    if (rep.computed[k].multiplicity != rep.ambient[k].multiplicity)
      rep.multiplicities_match = false;
  }
  if (!rep.multiplicities_match) {
    std::ostringstream os;
    os << "constant-spectrum oracle mismatch on " << g.name << ":";
    for (std::size_t k = 0; k < std::max(rep.computed.size(), rep.ambient.size()); ++k) {
      os << " level " << k << " computed ";
      if (k < rep.computed.size())
        os << rep.computed[k].value << " x" << rep.computed[k].multiplicity;
      else
        os << "missing";
      os << " vs ambient ";
      if (k < rep.ambient.size())
        os << rep.ambient[k].value << " x" << rep.ambient[k].multiplicity;
      else
        os << "extra";
      os << ";";
    }
    throw NumericalError(os.str());
  }
  return rep;
}

}  // namespace ac
