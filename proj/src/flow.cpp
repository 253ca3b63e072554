#include "ac/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace ac {

namespace {

Tridiag implicit_operator(const Grid& g, double eps, double dt) {
  const int n = g.count();
  Tridiag a;
  a.diag.resize(n);
  a.sub.resize(n - 1);
  a.sup.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    double stiff = 0.0;
    if (i > 0) {
      const double c = g.w_half[i - 1] / (g.h * g.mass[i]);
      a.sub[i - 1] = -dt * eps * c;
      stiff += c;
    }
    if (i + 1 < n) {
      const double c = g.w_half[i] / (g.h * g.mass[i]);
      a.sup[i] = -dt * eps * c;
      stiff += c;
    }
    a.diag[i] = 1.0 + dt * eps * stiff;
  }
  return a;
}

std::vector<double> explicit_rhs(const Grid& g, double eps, const Profile& u, double dt,
                                 const PotentialSpec& pot) {
  std::vector<double> rhs(u);
  for (int i = 0; i < g.count(); ++i) rhs[i] -= dt * pot.w1(u[i]) / eps;
  return rhs;
}

}  // namespace

Profile flow_step(const Grid& g, double eps, const Profile& u, double dt,
                  const PotentialSpec& pot) {
  if (!(dt > 0.0)) throw std::invalid_argument("flow_step: dt must be positive");
  return solve_tridiag(implicit_operator(g, eps, dt), explicit_rhs(g, eps, u, dt, pot));
}

FlowTrace flow_to_equilibrium(const Grid& g, double eps, Profile u0,
                              const PotentialSpec& pot, FlowOptions opts) {
  if (!(eps > 0.0)) throw std::invalid_argument("flow_to_equilibrium: eps must be positive");
  for (double x : u0)
    if (std::abs(x) > 1.0 + 1e-12)
      throw std::invalid_argument("flow_to_equilibrium: requires |u0| <= 1");
  const double w2sup = sup_abs_w2(pot);
  const double dt_cap = eps / w2sup;
  double dt = (opts.dt > 0.0) ? opts.dt : 0.5 * dt_cap;
  if (dt > dt_cap + 1e-15)
    throw std::invalid_argument(
        "flow_to_equilibrium: dt exceeds eps/sup|W''|, the comparison-principle cap");
  const double t_max = (opts.t_max > 0.0) ? opts.t_max : 1e4 * eps;

  FlowTrace trace;
  trace.dt = dt;
  trace.energies.push_back(energy(g, u0, eps, pot));
  trace.snapshot_times.push_back(0.0);
  trace.snapshots.push_back(u0);

  const TridiagFactor factor(implicit_operator(g, eps, dt));
  Profile u = std::move(u0);
  double t = 0.0;
  long step = 0;
  const double mono_tol = 1e-12;
  while (t < t_max) {
    Profile next = factor.solve(explicit_rhs(g, eps, u, dt, pot));
    t += dt;
    ++step;
    double change = 0.0;
    for (int i = 0; i < g.count(); ++i) {
      const double d = next[i] - u[i];
      change = std::max(change, std::abs(d));
      if (d < -mono_tol) trace.monotone_up = false;
      if (d > mono_tol) trace.monotone_down = false;
    }
    u = std::move(next);
    trace.energies.push_back(energy(g, u, eps, pot));
    if (step % opts.snapshot_stride == 0) {
      trace.snapshot_times.push_back(t);
      trace.snapshots.push_back(u);
    }
    if (change <= opts.settle_tol * dt) {
      trace.settled = true;
      break;
    }
  }
  trace.final_time = t;
  if (trace.snapshot_times.back() != t) {
    trace.snapshot_times.push_back(t);
    trace.snapshots.push_back(u);
  }
  if (trace.settled) trace.limit = std::move(u);
  return trace;
}

bool is_subsolution(const Grid& g, double eps, const Profile& u, const PotentialSpec& pot) {
  const Profile res = residual(g, u, eps, pot);
  for (int i = 1; i + 1 < g.count(); ++i)
    if (res[i] < -1e-12) return false;
  return true;
}

}  // namespace ac
