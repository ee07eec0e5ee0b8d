#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace lazycost {

// Runs fn(i) for i in [0, n). When parallel is true and OpenMP is available
// the iterations are distributed over threads; fn must only write to
// per-index state so that serial and parallel runs produce identical results.
template <typename Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn) {
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline bool openmp_enabled() {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

}  // namespace lazycost
