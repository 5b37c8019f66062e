#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ksurf {

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline bool in_parallel_region() {
#if defined(_OPENMP)
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

inline double wall_time() {
#if defined(_OPENMP)
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

// Static-schedule parallel loop over [begin, end).  The body must write only
// to slots owned by its own index so that the parallel and serial paths
// produce identical results.  Falls back to a plain loop when parallelism is
// disabled, unavailable, or we are already inside a parallel region.
template <class F>
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end, F&& f, bool parallel = true) {
    if (!parallel || max_threads() <= 1 || in_parallel_region()) {
        for (std::ptrdiff_t i = begin; i < end; ++i) f(i);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = begin; i < end; ++i) f(i);
#else
    for (std::ptrdiff_t i = begin; i < end; ++i) f(i);
#endif
}

}  // namespace ksurf
