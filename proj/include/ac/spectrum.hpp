#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ac/grid.hpp"

namespace ac {

/// Eigenvalues of one reduced radial problem
///   -Lap_red + q_mode(r) + eps^{-2} W''(u)
/// in the weight inner product, ascending, restricted to those below the
/// requested cutoff. 1-D Sturm-Liouville problems have simple spectra.
struct ModeEigenvalues {
  TransverseMode mode;
  std::vector<double> eigenvalues;
  double cutoff = 0.0;
};

/// Approximate kernel element generated by an ambient rotation: the radial
/// part u'(r), assigned to the transverse mode its first-harmonic factor
/// lives in, with the quadratic-form Rayleigh quotient. The quotient
/// vanishes as O(h^2) under refinement since the continuum candidate is an
/// exact kernel element at every eps.
struct KillingCandidate {
  TransverseMode mode;
  Profile radial;
  double rayleigh = 0.0;
};

struct AssembleOptions {
  double eigen_cutoff = 1.0;  // collect eigenvalues <= this per retained mode
  bool richardson = true;     // re-solve on a doubled grid and extrapolate
  bool parallel = true;       // per-mode fan-out
  double ratio_min = 10.0;    // zero-classification ratio test
};

/// Assembled Morse data with the zero-classification tolerance that was
/// used. index counts eigenvalues < -zero_tol and nullity those within
/// +-zero_tol, each weighted by the transverse multiplicity. zero_tol is
/// sqrt(kappa mu) where kappa is the largest Killing Rayleigh quotient and
/// mu the smallest non-Killing-aligned |eigenvalue|; mu/kappa >= ratio_min
/// is enforced, otherwise the nullity is reported indeterminate.
struct SpectrumReport {
  double eps = 0.0;
  std::string geometry;
  int index = 0;
  int nullity = 0;
  int killing_nullity_expected = 0;
  double zero_tol = 0.0;
  std::vector<double> killing_rayleigh;
  double truncation_bound = 0.0;
  int index_coarse = 0;  // counted from the base-grid eigenvalues
  int index_fine = 0;    // counted from the doubled-grid eigenvalues
  std::vector<ModeEigenvalues> modes;
};

// Eigenvalues <= cutoff of one transverse mode at the profile u.
// Requires h <= eps/4.
ModeEigenvalues mode_eigenvalues(const Grid& g, const Profile& u, double eps,
                                 const PotentialSpec& pot, const TransverseMode& mode,
                                 double cutoff);

// Eigenvector for a computed eigenvalue of a mode problem, mapped back to a
// full-length profile (zero at Dirichlet endpoints), normalised to sup 1
// with positive mean.
Profile mode_eigenvector(const Grid& g, const Profile& u, double eps,
                         const PotentialSpec& pot, const TransverseMode& mode,
                         double lambda);

// Lowest eigenvalue and its sup-normalised positive eigenfunction for one
// mode problem (the first eigenfunction phi_1 used by the flow barriers).
std::pair<double, Profile> ground_state(const Grid& g, const Profile& u, double eps,
                                        const PotentialSpec& pot,
                                        const TransverseMode& mode);

// Full spectral assembly across all modes with min q below the form-
// positivity truncation bound eps^{-2} sup(-W'')_+; discarded modes
// provably contribute only positive eigenvalues. Throws
// IndeterminateNullity when the zero-classification ratio test fails.
SpectrumReport assemble(const Grid& g, const Profile& u, double eps,
                        const PotentialSpec& pot, AssembleOptions opts = {});

// The explicit rotation-generated kernel candidates for the grid's
// geometry: u'(r) in the first-harmonic mode family.
std::vector<KillingCandidate> killing_modes(const Grid& g, const Profile& u, double eps,
                                            const PotentialSpec& pot);

struct SpectrumLevel {
  double value = 0.0;
  int multiplicity = 0;
};

/// Cross-validation of the separation of variables: the reduced spectrum of
/// -Lap at constant u (potential term removed) reassembled across modes,
/// against the ambient sphere levels k(k+n) with harmonic multiplicities.
struct ConstantSpectrumReport {
  std::vector<SpectrumLevel> computed;
  std::vector<SpectrumLevel> ambient;
  double max_rel_err = 0.0;
  bool multiplicities_match = false;
};

// levels <= 6. Throws NumericalError on a multiplicity mismatch (a geometry
// or discretisation bug, not a tolerance issue).
ConstantSpectrumReport constant_spectrum_oracle(const ReducedGeometry& g, int levels,
                                                int nodes, bool parallel = true);

}  // namespace ac
