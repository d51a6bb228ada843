#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace axiring {

// Global worker count for the pairwise summation loops. 0 means "library
// default" (all hardware threads under OpenMP, serial otherwise). Results are
// bitwise identical for any thread count: every output element is reduced by
// a single thread in a fixed source order.
inline int& thread_count_ref() {
  static int n = 0;
  return n;
}

inline void set_thread_count(int n) { thread_count_ref() = n < 0 ? 0 : n; }

inline int effective_threads() {
  int n = thread_count_ref();
  if (n > 0) return n;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Resolves a requested worker count against the AXIRING_THREADS environment
// variable (env wins) and the hardware default (requested == 0).
inline int resolve_thread_count(int requested) {
  if (const char* env = std::getenv("AXIRING_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Body>
inline void parallel_for(long n, const Body& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (long i = 0; i < n; ++i) body(i);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

// Variant for uneven row costs (triangular double sums). Still deterministic:
// the schedule only decides which thread computes which row.
template <class Body>
inline void parallel_for_dynamic(long n, const Body& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(effective_threads())
  for (long i = 0; i < n; ++i) body(i);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace axiring
