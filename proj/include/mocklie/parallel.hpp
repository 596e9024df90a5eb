#pragma once

// Deterministic sweep primitive shared by the hot kernels (axiom sweeps,
// identity checks, relation-row generation, reduction batches).
//
// first_hit scans indices [0, n) for predicate hits and returns the SMALLEST
// hitting index, or -1 if none.  The OpenMP variant prunes iterations above
// the best hit seen so far and keeps a running minimum, so its result — and
// therefore every witness reported by the library — is identical to the
// serial reference no matter how many threads run.

#include <atomic>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mocklie::par {

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// pred(i, tid) -> bool; tid in [0, jobs) names the worker for scratch reuse
template <class Pred>
std::int64_t first_hit_serial(std::int64_t n, Pred&& pred) {
  for (std::int64_t i = 0; i < n; ++i)
    if (pred(i, 0)) return i;
  return -1;
}

template <class Pred>
std::int64_t first_hit_parallel(std::int64_t n, int jobs, Pred&& pred) {
#ifdef _OPENMP
  std::atomic<std::int64_t> best{n};
#pragma omp parallel num_threads(jobs)
  {
    int tid = omp_get_thread_num();
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      if (i >= best.load(std::memory_order_relaxed)) continue;
      if (pred(i, tid)) {
        std::int64_t cur = best.load(std::memory_order_relaxed);
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  }
  std::int64_t b = best.load();
  return b == n ? -1 : b;
#else
  (void)jobs;
  return first_hit_serial(n, pred);
#endif
}

template <class Pred>
std::int64_t first_hit(std::int64_t n, int jobs, Pred&& pred) {
  if (jobs <= 1) return first_hit_serial(n, pred);
  return first_hit_parallel(n, jobs, pred);
}

// body(i, tid) for i in [0, n); each i owns its output slot, so the parallel
// variant is deterministic by construction.
template <class Body>
void for_each_serial(std::int64_t n, Body&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i, 0);
}

template <class Body>
void for_each(std::int64_t n, int jobs, Body&& body) {
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel num_threads(jobs)
    {
      int tid = omp_get_thread_num();
#pragma omp for schedule(dynamic, 32)
      for (std::int64_t i = 0; i < n; ++i) body(i, tid);
    }
    return;
  }
#endif
  for_each_serial(n, body);
}

}  // namespace mocklie::par
