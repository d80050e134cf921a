#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fairmetric {

// Every parallel kernel in this library also has a serial path, selected by
// this policy.  The serial path is the reference implementation: suites seed
// their randomness per trial index, so both paths must produce identical
// reports (asserted in the test suite, timed in tools/bench).
enum class Exec { serial, parallel };

// Worker count for parallel kernels.  FAIRMETRIC_THREADS, when set to a
// positive integer, caps the OpenMP thread count.
inline int effective_threads() {
  int n = 1;
#ifdef _OPENMP
  n = omp_get_max_threads();
#endif
  if (const char* s = std::getenv("FAIRMETRIC_THREADS")) {
    const int cap = std::atoi(s);
    if (cap > 0 && cap < n) n = cap;
  }
  return n;
}

// Runs body(i) for i in [0, n).  Bodies must be independent; when results
// are collected they go into slot i of a preallocated buffer so that the
// serial and parallel schedules aggregate identically.
template <class F>
void parallel_for(std::size_t n, Exec exec, F&& body) {
  if (exec == Exec::parallel) {
#ifdef _OPENMP
    const int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace fairmetric
