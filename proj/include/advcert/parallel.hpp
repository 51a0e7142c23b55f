#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace advcert {

/// Serial is the reference path the tests compare against; Parallel runs the
/// same per-index body under OpenMP. Bodies must be independent across
/// indices and must not throw (catch per index and record instead).
enum class ExecutionPolicy { Serial, Parallel };

template <typename F>
void for_each_index(std::size_t n, ExecutionPolicy policy, F&& body) {
  if (policy == ExecutionPolicy::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// n = 0 leaves the runtime default untouched.
inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace advcert
