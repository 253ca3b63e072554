#pragma once

#include <optional>
#include <vector>

#include "ac/grid.hpp"

namespace ac {

struct FlowOptions {
  double dt = 0.0;          // 0 -> eps / (2 sup|W''|)
  double t_max = 0.0;       // 0 -> 1e4 * eps
  double settle_tol = 1e-8; // settle when ||u(t+dt) - u(t)||_inf <= settle_tol * dt
  int snapshot_stride = 100;
};

/// Time series of the semi-implicit parabolic flow. Energies are recorded
/// every step; profiles every snapshot_stride steps plus the final state.
/// The monotone flags watch consecutive steps nodewise (tolerance 1e-12):
/// a flow started from a discrete subsolution stays nondecreasing because
/// (I - dt eps Lap) is an M-matrix and dt is capped so the explicit part is
/// order-preserving.
struct FlowTrace {
  double dt = 0.0;
  std::vector<double> energies;           // energy at t = k dt, k = 0, 1, ...
  std::vector<double> snapshot_times;
  std::vector<Profile> snapshots;
  bool monotone_up = true;
  bool monotone_down = true;
  bool settled = false;
  double final_time = 0.0;
  std::optional<Profile> limit;           // present when settled
};

// One semi-implicit step: (I - dt eps Lap) u_next = u - dt (1/eps) W'(u).
Profile flow_step(const Grid& g, double eps, const Profile& u, double dt,
                  const PotentialSpec& pot);

// Integrates until settled or t_max. Requires |u0| <= 1 and
// dt <= eps / sup|W''| (the discrete comparison-principle cap).
FlowTrace flow_to_equilibrium(const Grid& g, double eps, Profile u0,
                              const PotentialSpec& pot, FlowOptions opts = {});

// True iff eps Lap u - (1/eps) W'(u) >= -1e-12 at every interior node.
bool is_subsolution(const Grid& g, double eps, const Profile& u, const PotentialSpec& pot);

}  // namespace ac
