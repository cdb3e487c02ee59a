// Times the integral/subgradient kernel serial vs parallel on seeded Gaussian
// configurations of growing size.  The parallel path must agree bit-for-bit:
// per-simplex results land in slots and are reduced in index order.
#include <chrono>
#include <cstdio>

#include "tentmle/objective.hpp"
#include "tentmle/rng.hpp"
#include "tentmle/subdivision.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace tentmle;

namespace {

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch()).count();
}

double run_case(const PointConfig& X, const Vec& y, const TentSubdivision& T, bool parallel,
                int reps, ObjectiveValue& out) {
    WeightVector w = uniform_weights(X.size());
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        out = objective_and_subgradient(X, w, y, T, parallel);
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif
    std::printf("%8s %10s %12s %12s %8s %s\n", "n", "simplices", "serial(ms)", "parallel(ms)",
                "speedup", "identical");
    for (std::size_t n : {200, 1000, 5000, 20000}) {
        GaussianSampler g(7);
        PointConfig X = g.sample(n, 2);
        Vec y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double q = 0;
            for (double v : X.pts[i]) q += v * v;
            y[i] = -0.5 * q;
        }
        TentSubdivision T = build_tent(X, y);
        ObjectiveValue a, b;
        int reps = n <= 1000 ? 5 : 2;
        double ts = run_case(X, y, T, false, reps, a);
        double tp = run_case(X, y, T, true, reps, b);
        bool same = a.sigma == b.sigma && a.integral == b.integral && a.subgrad == b.subgrad;
        std::printf("%8zu %10zu %12.2f %12.2f %8.2f %s\n", n, T.simplices.size(), ts, tp,
                    ts / tp, same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}
