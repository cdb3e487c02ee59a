#pragma once

// Brute-force LP oracle for cross-checking lp_minimize: enumerate every basis
// (n-subset of the constraint rows), solve the square system, keep the best
// feasible vertex.  Exponential, fine for n <= 6.

#include <cmath>
#include <limits>
#include <vector>

#include "tentmle/constraints.hpp"

namespace testsupport {

struct OracleLp {
    bool found = false;
    double objective = std::numeric_limits<double>::infinity();
    tentmle::Vec y;
};

// min cost.y  s.t.  every system row >= 0  and  -box <= y_i <= box.
inline OracleLp oracle_lp_min(const tentmle::HeightIneqSystem& system,
                              const tentmle::Vec& cost, double box,
                              double feas_tol = 1e-7) {
    const int n = system.n;
    std::vector<std::vector<double>> A;  // a.y >= b
    std::vector<double> b;
    for (auto& row : system.rows) {
        std::vector<double> a(n, 0.0);
        for (auto& [i, c] : row.terms) a[i] += c;
        A.push_back(std::move(a));
        b.push_back(0.0);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<double> lo(n, 0.0), hi(n, 0.0);
        lo[i] = 1.0;
        hi[i] = -1.0;
        A.push_back(std::move(lo));
        b.push_back(-box);
        A.push_back(std::move(hi));
        b.push_back(-box);
    }
    const int m = static_cast<int>(A.size());

    OracleLp best;
    std::vector<int> pick(n);
    std::vector<double> M(static_cast<std::size_t>(n) * (n + 1));
    auto try_basis = [&]() {
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) M[r * (n + 1) + c] = A[pick[r]][c];
            M[r * (n + 1) + n] = b[pick[r]];
        }
        for (int c = 0; c < n; ++c) {  // gaussian elimination, partial pivot
            int p = c;
            for (int r = c + 1; r < n; ++r)
                if (std::fabs(M[r * (n + 1) + c]) > std::fabs(M[p * (n + 1) + c])) p = r;
            if (std::fabs(M[p * (n + 1) + c]) < 1e-11) return;
            if (p != c)
                for (int k = c; k <= n; ++k) std::swap(M[p * (n + 1) + k], M[c * (n + 1) + k]);
            for (int r = c + 1; r < n; ++r) {
                double f = M[r * (n + 1) + c] / M[c * (n + 1) + c];
                for (int k = c; k <= n; ++k) M[r * (n + 1) + k] -= f * M[c * (n + 1) + k];
            }
        }
        tentmle::Vec y(n);
        for (int r = n - 1; r >= 0; --r) {
            double s = M[r * (n + 1) + n];
            for (int c = r + 1; c < n; ++c) s -= M[r * (n + 1) + c] * y[c];
            y[r] = s / M[r * (n + 1) + r];
        }
        for (int r = 0; r < m; ++r) {
            double v = -b[r];
            for (int c = 0; c < n; ++c) v += A[r][c] * y[c];
            if (v < -feas_tol) return;
        }
        double obj = 0.0;
        for (int c = 0; c < n; ++c) obj += cost[c] * y[c];
        if (obj < best.objective) {
            best.found = true;
            best.objective = obj;
            best.y = std::move(y);
        }
    };

    // walk all n-subsets of {0..m-1}
    for (int i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        try_basis();
        int i = n - 1;
        while (i >= 0 && pick[i] == m - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

}  // namespace testsupport
