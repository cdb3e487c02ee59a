#include "tentmle/geometry.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tentmle/parallel.hpp"

namespace tentmle {

namespace {

double normalize_zero(double v) { return v == 0.0 ? 0.0 : v; }

struct VecHash {
    std::size_t operator()(const Vec& p) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (double c : p) {
            double n = normalize_zero(c);
            std::uint64_t bits;
            std::memcpy(&bits, &n, sizeof bits);
            h = (h ^ bits) * 0x100000001b3ULL;
        }
        return h;
    }
};

using PointSet = std::unordered_map<Vec, int, VecHash>;

// Continued-fraction rational detection, denominator bound 1e6.
bool rational_denominator(double v, long long& den) {
    if (!std::isfinite(v)) return false;
    double x = std::fabs(v);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double a = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(a);
        if (fl > 2e18) return false;
        long long ai = static_cast<long long>(fl);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > 1'000'000) return false;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::fabs(approx - x) <= 1e-9 * std::max(1.0, x)) {
            den = q1;
            return true;
        }
        double frac = a - fl;
        if (frac < 1e-15) return false;
        a = 1.0 / frac;
    }
    return false;
}

long long lcm_ll(long long a, long long b) {
    long long g = std::gcd(a, b);
    return a / g * b;
}

// Planar orientation: > 0 when (a,b,c) turns left.  Exact in __int128 when an
// integer scaling is supplied, long double with a relative tolerance otherwise.
struct Orient2 {
    bool exact = false;
    double sx = 1.0, sy = 1.0;  // multipliers taking coordinates to integers

    int operator()(const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) const {
        if (exact) {
            __int128 ax = llround_checked(a[0] * sx), ay = llround_checked(a[1] * sy);
            __int128 bx = llround_checked(b[0] * sx), by = llround_checked(b[1] * sy);
            __int128 cx = llround_checked(c[0] * sx), cy = llround_checked(c[1] * sy);
            __int128 det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
            return det > 0 ? 1 : det < 0 ? -1 : 0;
        }
        long double det = (static_cast<long double>(b[0]) - a[0]) * (static_cast<long double>(c[1]) - a[1]) -
                          (static_cast<long double>(b[1]) - a[1]) * (static_cast<long double>(c[0]) - a[0]);
        long double scale = std::fabs((long double)b[0] - a[0]) * (std::fabs((long double)c[1] - a[1])) +
                            std::fabs((long double)b[1] - a[1]) * (std::fabs((long double)c[0] - a[0])) + 1e-300L;
        long double tol = 1e-12L * scale;
        return det > tol ? 1 : det < -tol ? -1 : 0;
    }

    static long long llround_checked(double v) { return llround(v); }
};

Orient2 make_orient(const std::vector<std::array<double, 2>>& pts) {
    Orient2 o;
    long long dx = 1, dy = 1;
    for (auto& p : pts) {
        long long d;
        if (!rational_denominator(p[0], d)) return o;
        dx = lcm_ll(dx, d);
        if (dx > 1'000'000) return o;
        if (!rational_denominator(p[1], d)) return o;
        dy = lcm_ll(dy, d);
        if (dy > 1'000'000) return o;
    }
    double mx = 0, my = 0;
    for (auto& p : pts) {
        mx = std::max(mx, std::fabs(p[0]) * dx);
        my = std::max(my, std::fabs(p[1]) * dy);
    }
    if (mx > 4e15 || my > 4e15) return o;
    o.exact = true;
    o.sx = static_cast<double>(dx);
    o.sy = static_cast<double>(dy);
    return o;
}

// Monotone chain; returns hull vertices counterclockwise, collinear interior
// points dropped.  Degenerate inputs collapse to a point or a segment.
std::vector<int> hull2d(const std::vector<std::array<double, 2>>& pts, const Orient2& orient) {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (pts[i][0] != pts[j][0]) return pts[i][0] < pts[j][0];
        return pts[i][1] < pts[j][1];
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](int i, int j) { return pts[i] == pts[j]; }),
              idx.end());
    if (idx.size() <= 2) return idx;
    std::vector<int> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && orient(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = idx.size() - 1; i-- > 0;) {
        while (k >= lower && orient(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);  // counterclockwise; collinear inputs collapse to the two extremes
    if (h.size() == 2 && h[0] == h[1]) h.pop_back();
    return h;
}

bool inside_hull2d(const std::vector<std::array<double, 2>>& pts, const std::vector<int>& hull,
                   const std::array<double, 2>& q, const Orient2& orient) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return pts[hull[0]] == q || (orient.exact
            ? q[0] == pts[hull[0]][0] && q[1] == pts[hull[0]][1]
            : std::fabs(q[0] - pts[hull[0]][0]) + std::fabs(q[1] - pts[hull[0]][1]) < 1e-12);
    if (hull.size() == 2) {
        const auto &a = pts[hull[0]], &b = pts[hull[1]];
        if (orient(a, b, q) != 0) return false;
        double lo0 = std::min(a[0], b[0]), hi0 = std::max(a[0], b[0]);
        double lo1 = std::min(a[1], b[1]), hi1 = std::max(a[1], b[1]);
        return q[0] >= lo0 && q[0] <= hi0 && q[1] >= lo1 && q[1] <= hi1;
    }
    for (std::size_t e = 0; e < hull.size(); ++e) {
        const auto& a = pts[hull[e]];
        const auto& b = pts[hull[(e + 1) % hull.size()]];
        if (orient(a, b, q) < 0) return false;
    }
    return true;
}

void append_sorted(PointConfig& out, std::vector<Vec> added) {
    std::sort(added.begin(), added.end());
    for (auto& p : added) out.pts.push_back(std::move(p));
}

}  // namespace

bool is_bimonotone_hyperplane(const Vec& normal, double tol) {
    double scale = 0.0;
    for (double v : normal) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return false;
    int i = -1, j = -1;
    for (std::size_t c = 0; c < normal.size(); ++c) {
        if (std::fabs(normal[c]) <= tol * scale) continue;
        if (i < 0)
            i = static_cast<int>(c);
        else if (j < 0)
            j = static_cast<int>(c);
        else
            return false;
    }
    if (i < 0) return false;
    if (j < 0) return true;
    return normal[i] * normal[j] < tol * scale * scale;
}

bool Polytope::contains(const Vec& z, double tol) const {
    for (const auto& q : hrep) {
        double v = -q.b;
        double mag = std::fabs(q.b);
        for (std::size_t c = 0; c < q.a.size(); ++c) {
            v += q.a[c] * z[c];
            mag += std::fabs(q.a[c] * z[c]);
        }
        if (v < -tol * std::max(1.0, mag)) return false;
    }
    return true;
}

PointConfig minmax_closure_exact(const PointConfig& X, std::size_t max_size) {
    if (X.pts.empty()) throw InsufficientSamples("empty configuration");
    PointSet seen;
    std::vector<Vec> work;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Vec p = X.pts[i];
        for (double& c : p) c = normalize_zero(c);
        if (!seen.emplace(p, static_cast<int>(i)).second)
            throw Error("duplicate point in configuration");
        work.push_back(p);
    }
    std::size_t frontier_begin = 0;
    std::vector<Vec> added;
    while (frontier_begin < work.size()) {
        std::size_t fixed = work.size();
        for (std::size_t i = frontier_begin; i < fixed; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                for (Vec q : {meet(work[i], work[j]), join(work[i], work[j])}) {
                    for (double& c : q) c = normalize_zero(c);
                    if (seen.emplace(q, static_cast<int>(work.size())).second) {
                        work.push_back(q);
                        added.push_back(q);
                        if (work.size() > max_size)
                            throw Error("min-max closure exceeds size bound");
                    }
                }
            }
        }
        frontier_begin = fixed;
    }
    PointConfig out;
    out.dim = X.dim;
    out.origin_count = X.size();
    out.lattice_scale = X.lattice_scale;
    out.pts = X.pts;
    append_sorted(out, std::move(added));
    return out;
}

Grid2dClosure minmax_closure_grid2d(const PointConfig& X) {
    if (X.dim != 2) throw Error("grid closure requires dimension 2");
    if (X.pts.empty()) throw InsufficientSamples("empty configuration");
    std::vector<double> xs, ys;
    for (const auto& p : X.pts) {
        xs.push_back(normalize_zero(p[0]));
        ys.push_back(normalize_zero(p[1]));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    std::vector<std::array<double, 2>> pts;
    pts.reserve(X.size() + 2);
    for (const auto& p : X.pts) pts.push_back({normalize_zero(p[0]), normalize_zero(p[1])});
    pts.push_back({xs.front(), ys.front()});
    pts.push_back({xs.back(), ys.back()});
    Orient2 orient = make_orient(pts);
    std::vector<int> hull = hull2d(pts, orient);

    PointSet original;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Vec p = {normalize_zero(X.pts[i][0]), normalize_zero(X.pts[i][1])};
        if (!original.emplace(p, static_cast<int>(i)).second)
            throw Error("duplicate point in configuration");
    }

    Grid2dClosure out;
    out.config.dim = 2;
    out.config.origin_count = X.size();
    out.config.pts = X.pts;
    out.table.xs = xs;
    out.table.ys = ys;
    out.table.cell.assign(xs.size() * ys.size(), 0);

    std::vector<Vec> added;
    std::vector<std::pair<std::size_t, std::size_t>> added_cells;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            std::array<double, 2> q{xs[i], ys[j]};
            if (!inside_hull2d(pts, hull, q, orient)) continue;
            Vec v{q[0], q[1]};
            auto it = original.find(v);
            if (it != original.end()) {
                out.table.at(i, j) = it->second + 1;
            } else {
                added.push_back(v);
                added_cells.emplace_back(i, j);
            }
        }
    }
    // added points in grid (lex) order; xs/ys sorted, so the loop order is lex
    int next = static_cast<int>(X.size());
    for (std::size_t k = 0; k < added.size(); ++k) {
        out.config.pts.push_back(added[k]);
        out.table.at(added_cells[k].first, added_cells[k].second) = ++next;
    }
    return out;
}

Polytope mmconv(const PointConfig& X) {
    if (X.pts.empty()) throw InsufficientSamples("empty configuration");
    const int d = X.dim;
    Polytope P;
    P.dim = d;
    Vec lo = X.pts[0], hi = X.pts[0];
    for (const auto& p : X.pts) {
        lo = meet(lo, p);
        hi = join(hi, p);
    }
    if (d == 1) {
        LinearIneq a{{1.0}, lo[0]}, b{{-1.0}, -hi[0]};
        P.hrep = {a, b};
        P.vrep = {{lo[0]}, {hi[0]}};
        if (lo[0] == hi[0]) P.vrep = {{lo[0]}};
        return P;
    }

    struct Row {
        Vec a;
        double b;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    std::vector<std::vector<Row>> per_pair(pairs.size());

    for_each_index(pairs.size(), true, [&](std::size_t k) {
        auto [i, j] = pairs[k];
        std::vector<std::array<double, 2>> proj;
        proj.reserve(X.size() + 2);
        for (const auto& p : X.pts) proj.push_back({normalize_zero(p[i]), normalize_zero(p[j])});
        proj.push_back({lo[i], lo[j]});
        proj.push_back({hi[i], hi[j]});
        Orient2 orient = make_orient(proj);
        std::vector<int> hull = hull2d(proj, orient);
        auto& rows = per_pair[k];
        if (hull.size() == 1) {
            rows.push_back({Vec{1.0, 0.0}, proj[hull[0]][0]});
            rows.push_back({Vec{-1.0, 0.0}, -proj[hull[0]][0]});
            rows.push_back({Vec{0.0, 1.0}, proj[hull[0]][1]});
            rows.push_back({Vec{0.0, -1.0}, -proj[hull[0]][1]});
            return;
        }
        std::size_t m = hull.size();
        for (std::size_t e = 0; e < m; ++e) {
            const auto& a = proj[hull[e]];
            const auto& b = proj[hull[(e + 1) % m]];
            if (m == 2 && e == 1) break;
            Vec n{-(b[1] - a[1]), b[0] - a[0]};
            rows.push_back({n, n[0] * a[0] + n[1] * a[1]});
            if (m == 2) {  // segment: close it from the other side
                Vec nn{-n[0], -n[1]};
                rows.push_back({nn, nn[0] * a[0] + nn[1] * a[1]});
                // and cap the two ends along the segment direction
                Vec t{b[0] - a[0], b[1] - a[1]};
                rows.push_back({t, t[0] * a[0] + t[1] * a[1]});
                Vec tm{-t[0], -t[1]};
                rows.push_back({tm, tm[0] * b[0] + tm[1] * b[1]});
            }
        }
    });

    // lift the planar rows, canonicalize, dedupe
    std::map<std::vector<long long>, LinearIneq> dedup;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        for (const auto& row : per_pair[k]) {
            LinearIneq q;
            q.a.assign(d, 0.0);
            q.a[i] = row.a[0];
            q.a[j] = row.a[1];
            q.b = row.b;
            double norm = 0.0;
            for (double v : q.a) norm += v * v;
            norm = std::sqrt(norm);
            if (norm < 1e-14) continue;
            for (double& v : q.a) v /= norm;
            q.b /= norm;
            std::vector<long long> key;
            key.reserve(d + 1);
            for (double v : q.a) key.push_back(llround(v * 1e9));
            key.push_back(llround(q.b * 1e9));
            dedup.emplace(std::move(key), std::move(q));
        }
    }
    for (auto& [key, q] : dedup) P.hrep.push_back(q);

    if (d <= 3) {
        P.vrep = enumerate_vertices(P.hrep, d);
        // keep only facet-defining rows: tight vertex set of affine dimension d-1
        std::vector<LinearIneq> facets;
        for (const auto& q : P.hrep) {
            std::vector<const Vec*> tight;
            for (const auto& v : P.vrep) {
                double s = -q.b;
                for (int c = 0; c < d; ++c) s += q.a[c] * v[c];
                if (std::fabs(s) <= 1e-7) tight.push_back(&v);
            }
            if (tight.size() < static_cast<std::size_t>(d)) continue;
            // affine rank via Gram-Schmidt against the first tight vertex
            std::vector<Vec> basis;
            for (std::size_t t = 1; t < tight.size() && basis.size() + 1 < static_cast<std::size_t>(d); ++t) {
                Vec dir(d);
                for (int c = 0; c < d; ++c) dir[c] = (*tight[t])[c] - (*tight[0])[c];
                for (const auto& bvec : basis) {
                    double dot = 0.0;
                    for (int c = 0; c < d; ++c) dot += dir[c] * bvec[c];
                    for (int c = 0; c < d; ++c) dir[c] -= dot * bvec[c];
                }
                double nn = 0.0;
                for (double v : dir) nn += v * v;
                if (nn > 1e-14) {
                    nn = std::sqrt(nn);
                    for (double& v : dir) v /= nn;
                    basis.push_back(dir);
                }
            }
            if (basis.size() + 1 == static_cast<std::size_t>(d)) facets.push_back(q);
        }
        if (!facets.empty()) P.hrep = std::move(facets);
    }
    return P;
}

Polytope l_extension_polytope(const PointConfig& X) {
    if (X.pts.empty()) throw InsufficientSamples("empty configuration");
    const int d = X.dim;
    Polytope P;
    P.dim = d;
    Vec lo = X.pts[0], hi = X.pts[0];
    for (const auto& p : X.pts) {
        lo = meet(lo, p);
        hi = join(hi, p);
    }
    for (int i = 0; i < d; ++i) {
        LinearIneq low, high;
        low.a.assign(d, 0.0);
        low.a[i] = 1.0;
        low.b = lo[i];
        high.a.assign(d, 0.0);
        high.a[i] = -1.0;
        high.b = -hi[i];
        P.hrep.push_back(low);
        P.hrep.push_back(high);
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            double c = -1e300;
            for (const auto& p : X.pts) c = std::max(c, p[i] - p[j]);
            LinearIneq q;  // y_i - y_j <= c
            q.a.assign(d, 0.0);
            q.a[i] = -1.0;
            q.a[j] = 1.0;
            q.b = -c;
            P.hrep.push_back(q);
        }
    }
    if (d <= 3) P.vrep = enumerate_vertices(P.hrep, d);
    return P;
}

PointConfig discrete_l_extension(const PointConfig& X, std::size_t max_points) {
    if (X.pts.empty()) throw InsufficientSamples("empty configuration");
    const int d = X.dim;
    long long m = 1;
    for (const auto& p : X.pts) {
        for (double c : p) {
            long long den;
            if (!rational_denominator(c, den))
                throw IrrationalInput("coordinate is not rational within denominator 1e6");
            m = lcm_ll(m, den);
            if (m > 10'000'000)
                throw IrrationalInput("common denominator exceeds bound");
        }
    }
    std::vector<std::vector<long long>> Z;
    Z.reserve(X.size());
    for (const auto& p : X.pts) {
        std::vector<long long> z(d);
        for (int c = 0; c < d; ++c) {
            double v = p[c] * static_cast<double>(m);
            long long r = llround(v);
            if (std::fabs(v - static_cast<double>(r)) > 1e-6)
                throw IrrationalInput("scaled coordinate is not integral");
            z[c] = r;
        }
        Z.push_back(std::move(z));
    }
    std::vector<long long> lo(d, LLONG_MAX), hi(d, LLONG_MIN);
    for (const auto& z : Z)
        for (int c = 0; c < d; ++c) {
            lo[c] = std::min(lo[c], z[c]);
            hi[c] = std::max(hi[c], z[c]);
        }
    std::vector<std::vector<long long>> diff(d, std::vector<long long>(d, LLONG_MIN));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j)
                for (const auto& z : Z) diff[i][j] = std::max(diff[i][j], z[i] - z[j]);

    std::set<std::vector<long long>> members(Z.begin(), Z.end());
    std::vector<std::vector<long long>> found;
    std::vector<long long> cur(d);
    std::size_t count = 0;
    auto feasible_prefix = [&](int len) {
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                if (i != j && cur[i] - cur[j] > diff[i][j]) return false;
        return true;
    };
    auto rec = [&](auto&& self, int c) -> void {
        if (c == d) {
            if (!members.count(cur)) found.push_back(cur);
            if (++count > max_points) throw Error("lattice extension exceeds size bound");
            return;
        }
        for (long long v = lo[c]; v <= hi[c]; ++v) {
            cur[c] = v;
            if (!feasible_prefix(c + 1)) continue;
            self(self, c + 1);
        }
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end());

    PointConfig out;
    out.dim = d;
    out.origin_count = X.size();
    out.pts = X.pts;
    out.lattice_scale = m;
    for (const auto& z : found) {
        Vec p(d);
        for (int c = 0; c < d; ++c) p[c] = static_cast<double>(z[c]) / static_cast<double>(m);
        out.pts.push_back(std::move(p));
    }
    return out;
}

std::vector<Vec> enumerate_vertices(const std::vector<LinearIneq>& hrep, int dim, double tol) {
    std::vector<Vec> verts;
    const int m = static_cast<int>(hrep.size());
    if (dim < 1 || dim > 3 || m < dim) return verts;
    std::vector<int> pick(dim);
    auto try_combo = [&](const std::vector<int>& ids) {
        double A[3][3] = {{0}}, rhs[3] = {0};
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) A[r][c] = hrep[ids[r]].a[c];
            rhs[r] = hrep[ids[r]].b;
        }
        // Gaussian elimination with partial pivoting
        int perm[3] = {0, 1, 2};
        for (int col = 0; col < dim; ++col) {
            int best = col;
            for (int r = col + 1; r < dim; ++r)
                if (std::fabs(A[r][col]) > std::fabs(A[best][col])) best = r;
            if (std::fabs(A[best][col]) < 1e-11) return;
            std::swap(A[col], A[best]);
            std::swap(rhs[col], rhs[best]);
            std::swap(perm[col], perm[best]);
            for (int r = col + 1; r < dim; ++r) {
                double f = A[r][col] / A[col][col];
                for (int c = col; c < dim; ++c) A[r][c] -= f * A[col][c];
                rhs[r] -= f * rhs[col];
            }
        }
        Vec x(dim);
        for (int r = dim - 1; r >= 0; --r) {
            double s = rhs[r];
            for (int c = r + 1; c < dim; ++c) s -= A[r][c] * x[c];
            x[r] = s / A[r][r];
        }
        for (const auto& q : hrep) {
            double v = -q.b;
            double mag = std::fabs(q.b) + 1.0;
            for (int c = 0; c < dim; ++c) {
                v += q.a[c] * x[c];
                mag += std::fabs(q.a[c] * x[c]);
            }
            if (v < -1e-7 * mag) return;
        }
        for (const auto& prev : verts) {
            double dd = 0.0;
            for (int c = 0; c < dim; ++c) dd = std::max(dd, std::fabs(prev[c] - x[c]));
            if (dd <= tol * 10) return;
        }
        verts.push_back(std::move(x));
    };
    std::vector<int> ids(dim);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == dim) {
            try_combo(ids);
            return;
        }
        for (int i = start; i < m; ++i) {
            ids[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    std::sort(verts.begin(), verts.end());
    return verts;
}

bool is_minmax_closed(const PointConfig& X) {
    PointSet seen;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Vec p = X.pts[i];
        for (double& c : p) c = normalize_zero(c);
        seen.emplace(std::move(p), static_cast<int>(i));
    }
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Vec lo = meet(X.pts[i], X.pts[j]);
            Vec hi = join(X.pts[i], X.pts[j]);
            for (double& c : lo) c = normalize_zero(c);
            for (double& c : hi) c = normalize_zero(c);
            if (!seen.count(lo) || !seen.count(hi)) return false;
        }
    return true;
}

}  // namespace tentmle
