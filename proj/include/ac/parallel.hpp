#pragma once

#include <cstddef>

namespace ac {

// Applies fn to every index in [0, n). The parallel path requires fn(i) to
// be safe for concurrent calls with distinct i; results must be written to
// per-index slots so that serial and parallel runs are bit-identical.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& fn) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace ac
