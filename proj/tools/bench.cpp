// Timing comparison between the serial reference kernels and the OpenMP
// fan-out: the per-mode eigenvalue sweep of the spectral assembly and the
// Monte-Carlo torus sampler.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ac/measures.hpp"
#include "ac/spectrum.hpp"
#include "ac/stationary.hpp"

namespace {

template <class F>
double time_of(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  using namespace ac;
  const double eps = 0.05;
  const int nodes = 2000;
  const PotentialSpec pot = quartic_potential();
  const ReducedGeometry geom = clifford_geometry(1, 1);
  const Grid grid = build_grid(geom, nodes);
  const SolveResult sol =
      newton_solve(grid, eps, ansatz_profile(grid, eps, {{geom.minimal_radius, +1}}), pot);
  if (!sol.converged) {
    std::fprintf(stderr, "solver failed: %s\n", sol.message.c_str());
    return 1;
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif
  std::printf("%-34s %-12s %-12s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  {
    AssembleOptions serial_opts, par_opts;
    serial_opts.parallel = false;
    par_opts.parallel = true;
    SpectrumReport a, b;
    const double ts = time_of([&] { a = assemble(grid, sol.profile, eps, pot, serial_opts); });
    const double tp = time_of([&] { b = assemble(grid, sol.profile, eps, pot, par_opts); });
    std::printf("%-34s %-12.3f %-12.3f %.2fx   (index %d, nullity %d)\n",
                "spectrum assemble, clifford(1,1)", ts, tp, ts / tp, b.index, b.nullity);
    if (a.index != b.index || a.nullity != b.nullity) {
      std::fprintf(stderr, "serial and parallel assemblies disagree\n");
      return 1;
    }
  }
  {
    IntersectionResult a, b;
    const int samples = 4000000;
    const double ts = time_of(
        [&] { a = nodal_intersection_mc(M_PI / 6, 1.0, 0.0, M_PI / 4, samples, 7, false); });
    const double tp = time_of(
        [&] { b = nodal_intersection_mc(M_PI / 6, 1.0, 0.0, M_PI / 4, samples, 7, true); });
    std::printf("%-34s %-12.3f %-12.3f %.2fx\n", "Monte-Carlo torus sampler", ts, tp,
                ts / tp);
    if (a.intersects != b.intersects || a.margin != b.margin) {
      std::fprintf(stderr, "serial and parallel samplers disagree\n");
      return 1;
    }
  }
  return 0;
}
