#pragma once

// Shared independent oracles for the test suite: a set-based min-max closure
// fixpoint, Monte-Carlo integration of exp(linear) over a simplex, and small
// random generators.  All deliberately naive.

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "tentmle/types.hpp"

namespace testsupport {

inline tentmle::PointConfig make_config(int dim, std::vector<tentmle::Vec> pts) {
    tentmle::PointConfig cfg;
    cfg.dim = dim;
    cfg.pts = std::move(pts);
    cfg.origin_count = cfg.pts.size();
    return cfg;
}

// Fixpoint closure under coordinatewise min/max.  Meets and joins only copy
// coordinates, so exact double comparison is safe.
inline std::set<tentmle::Vec> brute_minmax_closure(const std::vector<tentmle::Vec>& pts) {
    std::set<tentmle::Vec> S(pts.begin(), pts.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<tentmle::Vec> cur(S.begin(), S.end());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                tentmle::Vec lo = cur[i], hi = cur[i];
                for (std::size_t c = 0; c < lo.size(); ++c) {
                    lo[c] = std::min(cur[i][c], cur[j][c]);
                    hi[c] = std::max(cur[i][c], cur[j][c]);
                }
                grew |= S.insert(lo).second;
                grew |= S.insert(hi).second;
            }
        }
    }
    return S;
}

inline double simplex_volume(const std::vector<tentmle::Vec>& v) {
    const int d = static_cast<int>(v.size()) - 1;
    std::vector<double> M(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) M[r * d + c] = v[r + 1][c] - v[0][c];
    double det = 1.0;
    for (int c = 0; c < d; ++c) {
        int p = c;
        for (int r = c + 1; r < d; ++r)
            if (std::fabs(M[r * d + c]) > std::fabs(M[p * d + c])) p = r;
        if (M[p * d + c] == 0.0) return 0.0;
        if (p != c) {
            for (int k = 0; k < d; ++k) std::swap(M[p * d + k], M[c * d + k]);
            det = -det;
        }
        det *= M[c * d + c];
        for (int r = c + 1; r < d; ++r) {
            double f = M[r * d + c] / M[c * d + c];
            for (int k = c; k < d; ++k) M[r * d + k] -= f * M[c * d + k];
        }
    }
    double fact = 1.0;
    for (int k = 2; k <= d; ++k) fact *= k;
    return std::fabs(det) / fact;
}

struct McEstimate {
    double value = 0.0;
    double stderror = 0.0;
};

// E over the uniform distribution on the simplex of exp(sum lambda_i h_i),
// times the simplex volume.  Dirichlet(1,..,1) via exponential spacings.
inline McEstimate mc_simplex_exp_integral(const std::vector<tentmle::Vec>& verts,
                                          const tentmle::Vec& heights, long samples,
                                          std::mt19937_64& rng) {
    const int k = static_cast<int>(verts.size());
    const double vol = simplex_volume(verts);
    std::exponential_distribution<double> exp1(1.0);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> lam(k);
    for (long s = 0; s < samples; ++s) {
        double tot = 0.0;
        for (int i = 0; i < k; ++i) tot += (lam[i] = exp1(rng));
        double h = 0.0;
        for (int i = 0; i < k; ++i) h += lam[i] / tot * heights[i];
        double v = std::exp(h);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sumsq / samples - mean * mean);
    return {vol * mean, vol * std::sqrt(var / samples)};
}

// Random nondegenerate simplex in [-1,1]^d (resamples until the volume is
// bounded away from zero).
inline std::vector<tentmle::Vec> random_simplex(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    while (true) {
        std::vector<tentmle::Vec> v(d + 1, tentmle::Vec(d));
        for (auto& p : v)
            for (double& c : p) c = U(rng);
        if (simplex_volume(v) > 0.05) return v;
    }
}

}  // namespace testsupport
