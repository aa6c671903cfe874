#pragma once

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace banach::par {

struct Best {
  long index = -1;
  double value = 0.0;
};

// Merge rule shared by both backends: strictly larger value wins, ties go to
// the smallest index.  f must be a pure function of i so the result is
// independent of thread count and schedule.
inline bool improves(const Best& cand, const Best& cur) {
  if (cand.index < 0) return false;
  if (cur.index < 0) return true;
  if (cand.value != cur.value) return cand.value > cur.value;
  return cand.index < cur.index;
}

template <class F>
Best argmax_serial(long n, F&& f) {
  Best best;
  for (long i = 0; i < n; ++i) {
    Best cand{i, f(i)};
    if (improves(cand, best)) best = cand;
  }
  return best;
}

#ifdef _OPENMP
template <class F>
Best argmax_omp(long n, F&& f) {
  Best best;
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(dynamic, 1) nowait
    for (long i = 0; i < n; ++i) {
      Best cand{i, f(i)};
      if (improves(cand, local)) local = cand;
    }
#pragma omp critical(banachlab_argmax)
    {
      if (improves(local, best)) best = local;
    }
  }
  return best;
}
#endif

// Deterministic argmax of f over [0, n).  Parallel when OpenMP is available
// and we are not already inside a parallel region; inner computations stay
// serial so only the outermost search fans out.
template <class F>
Best argmax(long n, F&& f) {
#ifdef _OPENMP
  if (!omp_in_parallel() && n > 1)
    return argmax_omp(n, std::forward<F>(f));
#endif
  return argmax_serial(n, std::forward<F>(f));
}

template <class F>
Best argmin(long n, F&& f) {
  Best b = argmax(n, [&](long i) { return -f(i); });
  b.value = -b.value;
  return b;
}

// Runs f(i) for every i in [0, n).  f writes into its own slot, so the result
// is schedule-independent; parallel only at the outermost level.
template <class F>
void for_each(long n, F&& f) {
#ifdef _OPENMP
  if (!omp_in_parallel() && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) f(i);
}

}  // namespace banach::par
