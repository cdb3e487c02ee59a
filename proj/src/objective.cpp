#include "tentmle/objective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "tentmle/parallel.hpp"

namespace tentmle {
namespace {

constexpr double kClusterSpan = 1e-4;  // below this, divide-by-gap loses digits
constexpr int kSeriesTerms = 12;
constexpr int kMaxNodes = 8;

double exp_clamped(double x) { return std::exp(std::min(x, 700.0)); }

// exp[x_i..x_j] for a cluster of nearly equal sorted nodes via the series
//   exp[x_i..x_j] = e^mu * sum_m h_m(c_i..c_j) / (m + k)!,   k = j - i,
// with h_m the complete homogeneous symmetric polynomials of the centered
// nodes.  Handles repeated nodes exactly.
double cluster_series(const double* x, int lo, int hi) {
    const int k = hi - lo;
    double mu = 0.0;
    for (int t = lo; t <= hi; ++t) mu += x[t];
    mu /= (double)(k + 1);

    double h[kSeriesTerms + 1] = {1.0};
    for (int m = 1; m <= kSeriesTerms; ++m) h[m] = 0.0;
    for (int t = lo; t <= hi; ++t) {
        double c = x[t] - mu;
        for (int m = 1; m <= kSeriesTerms; ++m) h[m] += c * h[m - 1];
    }

    double fact = 1.0;  // running (m + k)!
    for (int m = 2; m <= k; ++m) fact *= m;
    double sum = 0.0;
    for (int m = 0; m <= kSeriesTerms; ++m) {
        if (m > 0) fact *= (double)(m + k);
        sum += h[m] / fact;
    }
    return exp_clamped(mu) * sum;
}

double dd_sorted(const double* x, int n) {
    if (n == 1) return exp_clamped(x[0]);
    double tab[kMaxNodes * kMaxNodes];  // tab[i*n+j] = exp[x_i..x_j]
    for (int i = 0; i < n; ++i) tab[i * n + i] = exp_clamped(x[i]);
    for (int len = 1; len < n; ++len)
        for (int i = 0; i + len < n; ++i) {
            int j = i + len;
            double gap = x[j] - x[i];
            if (gap >= kClusterSpan)
                tab[i * n + j] = (tab[(i + 1) * n + j] - tab[i * n + j - 1]) / gap;
            else
                tab[i * n + j] = cluster_series(x, i, j);
        }
    return tab[n - 1];
}

// Core integral over one simplex; vertex coordinates by pointer, no copies.
// grad (length d+1) may be null.  Throws DegenerateSimplex on a flat simplex.
double simplex_core(const Vec* const* verts, const double* heights, int d, double* grad) {
    long double det = 1.0L;
    long double M[49];  // d <= 7 by the node cap below
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            M[r * d + c] = (long double)(*verts[r + 1])[c] - (long double)(*verts[0])[c];
    for (int c = 0; c < d; ++c) {
        int piv = c;
        for (int r = c + 1; r < d; ++r)
            if (std::fabs((double)M[r * d + c]) > std::fabs((double)M[piv * d + c])) piv = r;
        if (M[piv * d + c] == 0.0L) {
            det = 0.0L;
            break;
        }
        if (piv != c) {
            for (int k = c; k < d; ++k) std::swap(M[c * d + k], M[piv * d + k]);
            det = -det;
        }
        det *= M[c * d + c];
        for (int r = c + 1; r < d; ++r) {
            long double f = M[r * d + c] / M[c * d + c];
            for (int k = c; k < d; ++k) M[r * d + k] -= f * M[c * d + k];
        }
    }
    double absdet = std::fabs((double)det);
    if (absdet == 0.0) throw DegenerateSimplex("zero-volume simplex in the integral");

    double x[kMaxNodes];
    for (int i = 0; i <= d; ++i) x[i] = heights[i];
    std::sort(x, x + d + 1);
    double value = absdet * dd_sorted(x, d + 1);

    if (grad) {
        double xg[kMaxNodes];
        for (int i = 0; i <= d; ++i) {
            // sorted nodes with h_i duplicated
            int m = 0;
            bool put = false;
            for (int k = 0; k <= d; ++k) {
                if (!put && heights[i] <= x[k]) {
                    xg[m++] = heights[i];
                    put = true;
                }
                xg[m++] = x[k];
            }
            if (!put) xg[m++] = heights[i];
            grad[i] = absdet * dd_sorted(xg, d + 2);
        }
    }
    return value;
}

}  // namespace

double exp_divided_difference(const double* nodes, int count) {
    if (count <= 0) throw Error("divided difference needs at least one node");
    if (count > kMaxNodes) throw Error("divided difference order capped at eight nodes");
    double x[kMaxNodes];
    std::copy(nodes, nodes + count, x);
    std::sort(x, x + count);
    return dd_sorted(x, count);
}

double simplex_exp_integral(const std::vector<Vec>& vertices, const Vec& heights, Vec* grad) {
    const int d = (int)vertices.size() - 1;
    if (d < 0 || (int)heights.size() != d + 1) throw Error("simplex input size mismatch");
    if (d + 2 > kMaxNodes) throw Error("simplex dimension capped at six");
    if (d == 0) {
        if (grad) grad->assign(1, 0.0);
        return 0.0;
    }
    const Vec* vp[kMaxNodes];
    for (int k = 0; k <= d; ++k) vp[k] = &vertices[k];
    if (grad) {
        grad->assign(d + 1, 0.0);
        return simplex_core(vp, heights.data(), d, grad->data());
    }
    return simplex_core(vp, heights.data(), d, nullptr);
}

double integral_exp_tent(const PointConfig& X, const TentSubdivision& T, const Vec& heights,
                         bool parallel) {
    const int d = X.dim;
    if (d + 2 > kMaxNodes) throw Error("dimension capped at six");
    const std::size_t ns = T.simplices.size();
    std::vector<double> slot(ns, 0.0);
    std::vector<char> bad(ns, 0);
    for_each_index(ns, parallel, [&](std::size_t s) {
        const auto& S = T.simplices[s];
        const Vec* vp[kMaxNodes];
        double h[kMaxNodes];
        for (int k = 0; k <= d; ++k) {
            vp[k] = &X.pts[S[k]];
            h[k] = heights[S[k]];
        }
        try {
            slot[s] = simplex_core(vp, h, d, nullptr);
        } catch (const Error&) {
            bad[s] = 1;  // must not leak out of a parallel region
        }
    });
    for (char b : bad)
        if (b) throw DegenerateSimplex("zero-volume simplex in the integral");
    double total = 0.0;
    for (std::size_t s = 0; s < ns; ++s) total += slot[s];
    return total;
}

ObjectiveValue objective_and_subgradient(const PointConfig& X, const WeightVector& w,
                                         const Vec& y, const TentSubdivision& T, bool parallel) {
    const int d = X.dim;
    const std::size_t n = X.pts.size();
    if (w.w.size() != n || y.size() != n) throw Error("objective input size mismatch");
    if (d + 2 > kMaxNodes) throw Error("dimension capped at six");

    const std::size_t ns = T.simplices.size();
    std::vector<double> slot(ns, 0.0);
    std::vector<double> gslot(ns * (std::size_t)(d + 1), 0.0);
    std::vector<char> bad(ns, 0);
    for_each_index(ns, parallel, [&](std::size_t s) {
        const auto& S = T.simplices[s];
        const Vec* vp[kMaxNodes];
        double h[kMaxNodes];
        for (int k = 0; k <= d; ++k) {
            vp[k] = &X.pts[S[k]];
            h[k] = y[S[k]];
        }
        try {
            slot[s] = simplex_core(vp, h, d, gslot.data() + s * (std::size_t)(d + 1));
        } catch (const Error&) {
            bad[s] = 1;
        }
    });
    for (char b : bad)
        if (b) throw DegenerateSimplex("zero-volume simplex in the integral");

    ObjectiveValue out;
    out.subgrad.assign(n, 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
        out.integral += slot[s];
        const auto& S = T.simplices[s];
        const double* g = gslot.data() + s * (std::size_t)(d + 1);
        for (int k = 0; k <= d; ++k) out.subgrad[S[k]] += g[k];
    }
    out.sigma = out.integral;
    for (std::size_t i = 0; i < n; ++i) {
        out.sigma -= w.w[i] * y[i];
        out.subgrad[i] -= w.w[i];
    }
    return out;
}

}  // namespace tentmle
