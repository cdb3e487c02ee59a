#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace tentmle {

// Indexed loop, parallel when requested and compiled with OpenMP.  Kernels
// write into per-index slots and reduce serially afterwards, so results are
// bit-identical for any thread count; the serial path doubles as the
// reference implementation in tests and benchmarks.
template <typename F>
void for_each_index(std::size_t n, bool parallel, F&& body) {
#if defined(_OPENMP)
    if (parallel && n > 256) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace tentmle
