#include "tentmle/subdivision.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <map>
#include <numeric>
#include <vector>

#include "tentmle/parallel.hpp"
#include "tentmle/rng.hpp"

namespace tentmle {
namespace {

using ld = long double;

double coord_scale(const PointConfig& X) {
    double s = 1.0;
    for (const auto& p : X.pts)
        for (double v : p) s = std::max(s, std::fabs(v));
    return s;
}

// Solve A x = b in place, partial pivoting.  Returns false when singular.
bool solve_dense(std::vector<ld>& A, std::vector<ld>& b, int n) {
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs((double)A[r * n + c]) > std::fabs((double)A[piv * n + c])) piv = r;
        if (std::fabs((double)A[piv * n + c]) < 1e-30) return false;
        if (piv != c) {
            for (int k = c; k < n; ++k) std::swap(A[c * n + k], A[piv * n + k]);
            std::swap(b[c], b[piv]);
        }
        for (int r = c + 1; r < n; ++r) {
            ld f = A[r * n + c] / A[c * n + c];
            if (f == 0.0L) continue;
            for (int k = c; k < n; ++k) A[r * n + k] -= f * A[c * n + k];
            b[r] -= f * b[c];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        ld s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * b[k];
        b[r] = s / A[r * n + r];
    }
    return true;
}

ld det_dense(std::vector<ld> A, int n) {
    ld det = 1.0L;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs((double)A[r * n + c]) > std::fabs((double)A[piv * n + c])) piv = r;
        if (A[piv * n + c] == 0.0L) return 0.0L;
        if (piv != c) {
            for (int k = c; k < n; ++k) std::swap(A[c * n + k], A[piv * n + k]);
            det = -det;
        }
        det *= A[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            ld f = A[r * n + c] / A[c * n + c];
            for (int k = c; k < n; ++k) A[r * n + k] -= f * A[c * n + k];
        }
    }
    return det;
}

// d! times the volume of the projected simplex.
ld projected_det(const PointConfig& X, const std::vector<int>& verts) {
    const int d = X.dim;
    std::vector<ld> M((std::size_t)d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            M[(std::size_t)r * d + c] = (ld)X.pts[verts[r + 1]][c] - (ld)X.pts[verts[0]][c];
    return det_dense(std::move(M), d);
}

AffineFn fit_affine(const PointConfig& X, const std::vector<int>& verts, const Vec& h) {
    const int d = X.dim;
    const int n = d + 1;
    std::vector<ld> A((std::size_t)n * n);
    std::vector<ld> b(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < d; ++c) A[(std::size_t)r * n + c] = (ld)X.pts[verts[r]][c];
        A[(std::size_t)r * n + d] = 1.0L;
        b[r] = (ld)h[verts[r]];
    }
    if (!solve_dense(A, b, n)) throw DegenerateSimplex("affine fit on a flat simplex");
    AffineFn f;
    f.a.resize(d);
    for (int c = 0; c < d; ++c) f.a[c] = (double)b[c];
    f.b = (double)b[d];
    return f;
}

std::vector<int> lex_order(const PointConfig& X) {
    std::vector<int> ord(X.pts.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(),
              [&](int a, int b) { return X.pts[a] < X.pts[b]; });
    return ord;
}

// ---------------------------------------------------------------------------
// Upper envelopes per dimension.  All of them return simplices as index lists
// into X; orientation/order is cleaned up afterwards.
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> envelope_1d(const PointConfig& X, const Vec& h) {
    std::vector<int> ord = lex_order(X);
    std::vector<int> st;
    for (int i : ord) {
        while (st.size() >= 2) {
            int a = st[st.size() - 2], b = st[st.size() - 1];
            ld xa = X.pts[a][0], xb = X.pts[b][0], xc = X.pts[i][0];
            ld cross = ((ld)h[b] - (ld)h[a]) * (xc - xa) - ((ld)h[i] - (ld)h[a]) * (xb - xa);
            if (cross <= 0.0L)
                st.pop_back();  // middle point on or below the chord
            else
                break;
        }
        st.push_back(i);
    }
    std::vector<std::vector<int>> out;
    for (std::size_t k = 0; k + 1 < st.size(); ++k) out.push_back({st[k], st[k + 1]});
    if (out.empty()) throw DegenerateHull("fewer than two distinct support points");
    return out;
}

// Incremental convex hull of the lifted points (x, y, h) with conflict lists.
// Predicates in long double; callers pass pre-perturbed heights so ties are
// already broken.
class Hull3 {
  public:
    Hull3(const PointConfig& X, const Vec& h) : X_(X), h_(h) {}

    std::vector<std::vector<int>> upper_facets() {
        build();
        std::vector<std::vector<int>> out;
        for (const auto& f : facets_) {
            if (f.dead) continue;
            ld sa = cross2(f.v[0], f.v[1], f.v[2]);
            if (sa > area_tol_) out.push_back({f.v[0], f.v[1], f.v[2]});
        }
        if (out.empty()) throw DegenerateHull("no upward-looking facets");
        return out;
    }

  private:
    struct Facet {
        int v[3];
        int nbr[3];  // across edge (v[k], v[k+1])
        bool dead = false;
        std::vector<int> pts;
    };

    ld q(int i, int c) const { return c < 2 ? (ld)X_.pts[i][c] : (ld)h_[i]; }

    // Signed volume of (a, b, c, p); positive when p is on the normal side of
    // the oriented plane.  Second member is a magnitude for tolerance scaling.
    std::pair<ld, ld> orient(int a, int b, int c, int p) const {
        ld m[9];
        for (int col = 0; col < 3; ++col) {
            m[0 + col] = q(b, col) - q(a, col);
            m[3 + col] = q(c, col) - q(a, col);
            m[6 + col] = q(p, col) - q(a, col);
        }
        ld t0 = m[0] * (m[4] * m[8] - m[5] * m[7]);
        ld t1 = m[1] * (m[3] * m[8] - m[5] * m[6]);
        ld t2 = m[2] * (m[3] * m[7] - m[4] * m[6]);
        ld det = t0 - t1 + t2;
        ld mag = std::fabs((double)t0) + std::fabs((double)t1) + std::fabs((double)t2) + 1e-300L;
        return {det, mag};
    }

    bool visible(const Facet& f, int p) const {
        auto [det, mag] = orient(f.v[0], f.v[1], f.v[2], p);
        return det > 1e-13L * mag;
    }

    ld cross2(int a, int b, int c) const {
        ld ux = (ld)X_.pts[b][0] - (ld)X_.pts[a][0];
        ld uy = (ld)X_.pts[b][1] - (ld)X_.pts[a][1];
        ld vx = (ld)X_.pts[c][0] - (ld)X_.pts[a][0];
        ld vy = (ld)X_.pts[c][1] - (ld)X_.pts[a][1];
        return ux * vy - uy * vx;
    }

    void orient_outward(Facet& f) const {
        ld s = 0.0L;
        {
            ld m[9];
            for (int col = 0; col < 3; ++col) {
                m[0 + col] = q(f.v[1], col) - q(f.v[0], col);
                m[3 + col] = q(f.v[2], col) - q(f.v[0], col);
                m[6 + col] = interior_[col] - q(f.v[0], col);
            }
            s = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                m[2] * (m[3] * m[7] - m[4] * m[6]);
        }
        if (s > 0.0L) std::swap(f.v[1], f.v[2]);
    }

    void link(int fa, int sa, int fb, int sb) {
        facets_[fa].nbr[sa] = fb;
        facets_[fb].nbr[sb] = fa;
    }

    int edge_slot(const Facet& f, int u, int v) const {
        for (int k = 0; k < 3; ++k) {
            int a = f.v[k], b = f.v[(k + 1) % 3];
            if ((a == u && b == v) || (a == v && b == u)) return k;
        }
        return -1;
    }

    void build() {
        const int n = (int)X_.pts.size();
        if (n < 4) throw DegenerateHull("too few points for a planar support");
        double cs = coord_scale(X_);
        area_tol_ = 1e-12L * (ld)cs * (ld)cs;

        std::vector<int> ord = lex_order(X_);
        // Deterministic shuffle keyed on lexicographic rank.
        std::vector<int> ins = ord;
        for (std::size_t k = ins.size() - 1; k > 0; --k) {
            std::uint64_t r = splitmix64(0x7c0debull ^ (std::uint64_t)k);
            std::swap(ins[k], ins[r % (k + 1)]);
        }

        int i0 = ord[0], i1 = -1, i2 = -1, i3 = -1;
        {
            ld best = -1.0L;
            for (int i : ord) {
                if (i == i0) continue;
                ld d2 = 0;
                for (int c = 0; c < 3; ++c) {
                    ld dd = q(i, c) - q(i0, c);
                    d2 += dd * dd;
                }
                if (d2 > best) best = d2, i1 = i;
            }
            if (i1 < 0 || best <= 0.0L) throw DegenerateHull("coincident points");
            best = -1.0L;
            for (int i : ord) {
                if (i == i0 || i == i1) continue;
                // area of the lifted triangle, squared
                ld ux[3], vx[3];
                for (int c = 0; c < 3; ++c) ux[c] = q(i1, c) - q(i0, c), vx[c] = q(i, c) - q(i0, c);
                ld cxv[3] = {ux[1] * vx[2] - ux[2] * vx[1], ux[2] * vx[0] - ux[0] * vx[2],
                             ux[0] * vx[1] - ux[1] * vx[0]};
                ld a2 = cxv[0] * cxv[0] + cxv[1] * cxv[1] + cxv[2] * cxv[2];
                if (a2 > best) best = a2, i2 = i;
            }
            if (i2 < 0 || best <= 1e-40L) throw DegenerateHull("lifted points are collinear");
            best = -1.0L;
            ld sgn = 0.0L;
            for (int i : ord) {
                if (i == i0 || i == i1 || i == i2) continue;
                auto [det, mag] = orient(i0, i1, i2, i);
                (void)mag;
                if (std::fabs((double)det) > best) best = std::fabs((double)det), i3 = i, sgn = det;
            }
            if (i3 < 0 || best <= 0.0L) throw DegenerateHull("support points are collinear");
            (void)sgn;
        }

        for (int c = 0; c < 3; ++c)
            interior_[c] = (q(i0, c) + q(i1, c) + q(i2, c) + q(i3, c)) / 4.0L;

        facets_.clear();
        const int quad[4][3] = {{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}};
        for (auto& t : quad) {
            Facet f;
            f.v[0] = t[0], f.v[1] = t[1], f.v[2] = t[2];
            f.nbr[0] = f.nbr[1] = f.nbr[2] = -1;
            orient_outward(f);
            facets_.push_back(f);
        }
        wire_all_open();

        std::vector<int> where(n, -1);
        where[i0] = where[i1] = where[i2] = where[i3] = -2;
        for (int p : ins) {
            if (where[p] != -1) continue;
            for (int fid = 0; fid < (int)facets_.size(); ++fid)
                if (visible(facets_[fid], p)) {
                    where[p] = fid;
                    facets_[fid].pts.push_back(p);
                    break;
                }
        }

        for (int p : ins) {
            if (where[p] < 0) continue;
            int f0 = where[p];
            if (facets_[f0].dead) throw DegenerateHull("conflict bookkeeping failed");

            // Flood the visible region.
            std::vector<int> dead_list, stack{f0};
            facets_[f0].dead = true;
            struct HEdge {
                int u, v, outside;
            };
            std::vector<HEdge> horizon;
            while (!stack.empty()) {
                int fid = stack.back();
                stack.pop_back();
                dead_list.push_back(fid);
                for (int k = 0; k < 3; ++k) {
                    int g = facets_[fid].nbr[k];
                    if (g < 0) throw DegenerateHull("open hull surface");
                    if (facets_[g].dead) continue;
                    if (visible(facets_[g], p)) {
                        facets_[g].dead = true;
                        stack.push_back(g);
                    } else {
                        horizon.push_back({facets_[fid].v[k], facets_[fid].v[(k + 1) % 3], g});
                    }
                }
            }

            // One new facet per horizon edge; wire via a pending-edge map.
            std::map<std::pair<int, int>, std::pair<int, int>> pending;
            std::vector<int> fresh;
            for (const auto& e : horizon) {
                Facet f;
                f.v[0] = e.u, f.v[1] = e.v, f.v[2] = p;
                f.nbr[0] = f.nbr[1] = f.nbr[2] = -1;
                orient_outward(f);
                int fid = (int)facets_.size();
                facets_.push_back(f);
                fresh.push_back(fid);
                int so = edge_slot(facets_[fid], e.u, e.v);
                int sg = edge_slot(facets_[e.outside], e.u, e.v);
                if (so < 0 || sg < 0) throw DegenerateHull("horizon wiring failed");
                link(fid, so, e.outside, sg);
                for (int k = 0; k < 3; ++k) {
                    if (k == so) continue;
                    int a = facets_[fid].v[k], b = facets_[fid].v[(k + 1) % 3];
                    auto key = std::minmax(a, b);
                    auto it = pending.find(key);
                    if (it == pending.end())
                        pending[key] = {fid, k};
                    else {
                        link(fid, k, it->second.first, it->second.second);
                        pending.erase(it);
                    }
                }
            }
            if (!pending.empty()) throw DegenerateHull("horizon loop is not closed");

            where[p] = -2;
            for (int fid : dead_list) {
                for (int qpt : facets_[fid].pts) {
                    if (where[qpt] != fid) continue;
                    where[qpt] = -1;
                    for (int nf : fresh)
                        if (visible(facets_[nf], qpt)) {
                            where[qpt] = nf;
                            facets_[nf].pts.push_back(qpt);
                            break;
                        }
                }
                facets_[fid].pts.clear();
            }
        }
    }

    void wire_all_open() {
        std::map<std::pair<int, int>, std::pair<int, int>> pending;
        for (int fid = 0; fid < (int)facets_.size(); ++fid)
            for (int k = 0; k < 3; ++k) {
                if (facets_[fid].nbr[k] >= 0) continue;
                auto key = std::minmax(facets_[fid].v[k], facets_[fid].v[(k + 1) % 3]);
                auto it = pending.find(key);
                if (it == pending.end())
                    pending[key] = {fid, k};
                else {
                    link(fid, k, it->second.first, it->second.second);
                    pending.erase(it);
                }
            }
        if (!pending.empty()) throw DegenerateHull("initial simplex wiring failed");
    }

    const PointConfig& X_;
    const Vec& h_;
    std::vector<Facet> facets_;
    ld interior_[3] = {0, 0, 0};
    ld area_tol_ = 1e-12L;
};

// Brute-force lifted upper hull for d >= 3 (desk-scale point counts).  When
// `lower_det_sum` is given it also accumulates the downward-looking facets'
// projected determinants, which triangulate the same domain — a cheap
// consistency probe for overlap bugs.
std::vector<std::vector<int>> brute_upper_hull(const PointConfig& X, const Vec& h,
                                               ld* lower_det_sum) {
    const int d = X.dim;
    const int n = (int)X.pts.size();
    const int D = d + 1;
    double work = 1.0;
    for (int k = 0; k < D; ++k) work *= (double)(n - k) / (k + 1);
    if (work * n > 2e8) throw Error("point count too large for the generic hull path");

    double cs = coord_scale(X);
    for (double v : h) cs = std::max(cs, std::fabs(v));
    const ld face_tol = 1e-12L * (ld)cs;

    // Deterministic per-index height jitter, used for facet selection only.
    // Degenerate lifts (a flat one in the extreme) otherwise admit every
    // subset as a facet and the picked set over-covers the domain; the jitter
    // resolves every tie toward one fixed compatible triangulation.
    auto jitter = [&](int i) -> ld {
        std::uint64_t z = ((std::uint64_t)i + 1) * 0x9e3779b97f4a7c15ull;
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return (ld)(z >> 11) * 0x1.0p-53L * 1e-8L * (ld)cs;
    };
    auto lifted = [&](int i, int c) -> ld {
        return c < d ? (ld)X.pts[i][c] : (ld)h[i] + jitter(i);
    };

    std::vector<std::vector<int>> out;
    if (lower_det_sum) *lower_det_sum = 0.0L;

    std::vector<int> pick(D);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<ld> minor((std::size_t)d * d);
    while (true) {
        // Normal via cofactors of the edge matrix (d rows, D columns).
        std::vector<ld> normal(D);
        {
            std::vector<ld> edges((std::size_t)d * D);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < D; ++c)
                    edges[(std::size_t)r * D + c] = lifted(pick[r + 1], c) - lifted(pick[0], c);
            for (int skip = 0; skip < D; ++skip) {
                for (int r = 0; r < d; ++r) {
                    int cc = 0;
                    for (int c = 0; c < D; ++c) {
                        if (c == skip) continue;
                        minor[(std::size_t)r * d + cc++] = edges[(std::size_t)r * D + c];
                    }
                }
                ld dt = det_dense(minor, d);
                normal[skip] = ((skip % 2) ? -dt : dt);
            }
        }
        ld nmax = 0.0L;
        for (ld v : normal) nmax = std::max(nmax, std::fabs((double)v) + 0.0L);
        if (nmax > 0.0L && std::fabs((double)normal[d]) > 1e-12L * nmax) {
            // The cofactor normal's sign follows the subset's index order,
            // which means nothing geometrically; canonicalize it upward and
            // test the two half-space conditions explicitly.
            if (normal[d] < 0.0L)
                for (ld& v : normal) v = -v;
            bool upper = true;
            bool lower = lower_det_sum != nullptr;
            for (int p = 0; p < n && (upper || lower); ++p) {
                bool in_pick = false;
                for (int v : pick)
                    if (v == p) {
                        in_pick = true;
                        break;
                    }
                if (in_pick) continue;
                ld s = 0.0L;
                for (int c = 0; c < D; ++c) s += normal[c] * (lifted(p, c) - lifted(pick[0], c));
                if (s > face_tol * nmax) upper = false;
                if (s < -face_tol * nmax) lower = false;
            }
            if (upper) out.push_back(pick);
            else if (lower) *lower_det_sum += std::fabs((double)projected_det(X, pick));
        }

        int i = D - 1;
        while (i >= 0 && pick[i] == n - D + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int k = i + 1; k < D; ++k) pick[k] = pick[k - 1] + 1;
    }
    if (out.empty()) throw DegenerateHull("support is lower-dimensional");
    return out;
}

// ---------------------------------------------------------------------------
// Planar hull + tiny feasibility solver used for extreme-point filtering.
// ---------------------------------------------------------------------------

std::vector<int> hull2d_local(const std::vector<std::array<double, 2>>& pts) {
    std::vector<int> ord(pts.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    ord.erase(std::unique(ord.begin(), ord.end(),
                          [&](int a, int b) { return pts[a] == pts[b]; }),
              ord.end());
    if (ord.size() <= 2) return ord;
    auto cross = [&](int o, int a, int b) {
        ld v = ((ld)pts[a][0] - pts[o][0]) * ((ld)pts[b][1] - pts[o][1]) -
               ((ld)pts[a][1] - pts[o][1]) * ((ld)pts[b][0] - pts[o][0]);
        return v;
    };
    std::vector<int> h(2 * ord.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < ord.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], ord[i]) <= 0) --k;
        h[k++] = ord[i];
    }
    for (std::size_t i = ord.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], ord[i]) <= 0) --k;
        h[k++] = ord[i];
    }
    h.resize(k - 1);
    return h;
}

// Is q a convex combination of the given points?  Phase-one simplex on the
// moment equations; small and dense, adequate for cell-sized inputs.
bool in_convex_hull_pts(const std::vector<Vec>& pts, const Vec& q, double tol) {
    const int d = (int)q.size();
    const int m = d + 1;
    const int n = (int)pts.size();
    if (n == 0) return false;
    double scale = 1.0;
    for (const auto& p : pts)
        for (double v : p) scale = std::max(scale, std::fabs(v));

    // tableau: rows = m, columns = n structural + m artificial, plus rhs
    int cols = n + m;
    std::vector<double> T((std::size_t)m * (cols + 1), 0.0);
    auto at = [&](int r, int c) -> double& { return T[(std::size_t)r * (cols + 1) + c]; };
    for (int r = 0; r < m; ++r) {
        double rhs = (r < d) ? q[r] : 1.0;
        double sgn = rhs < 0 ? -1.0 : 1.0;
        for (int c = 0; c < n; ++c) at(r, c) = sgn * ((r < d) ? pts[c][r] : 1.0);
        at(r, n + r) = 1.0;
        at(r, cols) = sgn * rhs;
    }
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = n + r;
    // reduced costs for minimizing the artificial sum
    std::vector<double> z(cols + 1, 0.0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c <= cols; ++c) z[c] += T[(std::size_t)r * (cols + 1) + c];

    for (int iter = 0; iter < 400; ++iter) {
        int enter = -1;
        for (int c = 0; c < n; ++c)
            if (z[c] > 1e-11 * (1.0 + scale)) {
                enter = c;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            double a = at(r, enter);
            if (a > 1e-12) {
                double ratio = at(r, cols) / a;
                if (ratio < best - 1e-15 || (std::fabs(ratio - best) <= 1e-15 &&
                                             (leave < 0 || basis[r] < basis[leave]))) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) break;
        double piv = at(leave, enter);
        for (int c = 0; c <= cols; ++c) at(leave, c) /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == leave) continue;
            double f = at(r, enter);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(leave, c);
        }
        double f = z[enter];
        for (int c = 0; c <= cols; ++c) z[c] -= f * at(leave, c);
        basis[leave] = enter;
    }
    return z[cols] <= tol * (1.0 + scale);
}

std::vector<int> extreme_subset(const PointConfig& X, std::vector<int> verts) {
    const int d = X.dim;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if ((int)verts.size() <= d + 1) return verts;
    if (d == 1) {
        auto lo = *std::min_element(verts.begin(), verts.end(), [&](int a, int b) {
            return X.pts[a][0] < X.pts[b][0];
        });
        auto hi = *std::max_element(verts.begin(), verts.end(), [&](int a, int b) {
            return X.pts[a][0] < X.pts[b][0];
        });
        std::vector<int> out{lo, hi};
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    if (d == 2) {
        std::vector<std::array<double, 2>> pp(verts.size());
        for (std::size_t k = 0; k < verts.size(); ++k)
            pp[k] = {X.pts[verts[k]][0], X.pts[verts[k]][1]};
        std::vector<int> keep;
        for (int k : hull2d_local(pp)) keep.push_back(verts[k]);
        std::sort(keep.begin(), keep.end());
        return keep;
    }
    double cs = coord_scale(X);
    std::vector<int> keep;
    for (std::size_t k = 0; k < verts.size(); ++k) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (j != k) others.push_back(X.pts[verts[j]]);
        if (!in_convex_hull_pts(others, X.pts[verts[k]], 1e-9 * cs)) keep.push_back(verts[k]);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

// Reduce a wall's vertex set to its extreme points inside its hyperplane.
std::vector<int> wall_extremes(const PointConfig& X, std::vector<int> verts, const Vec& normal) {
    const int d = X.dim;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if ((int)verts.size() <= d) return verts;
    if (d <= 1) return verts;
    if (d == 2) {
        // wall is a segment: keep the two raw extremes along its direction
        Vec dir = {-normal[1], normal[0]};
        auto key = [&](int i) { return dir[0] * X.pts[i][0] + dir[1] * X.pts[i][1]; };
        int lo = verts[0], hi = verts[0];
        for (int v : verts) {
            if (key(v) < key(lo)) lo = v;
            if (key(v) > key(hi)) hi = v;
        }
        std::vector<int> out{lo, hi};
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    // d >= 3: orthonormal in-plane basis, then planar hull (d == 3) or the
    // generic filter.
    if (d == 3) {
        Vec u(3, 0.0), v(3, 0.0);
        int axis = 0;
        for (int c = 1; c < 3; ++c)
            if (std::fabs(normal[c]) < std::fabs(normal[axis])) axis = c;
        Vec e(3, 0.0);
        e[axis] = 1.0;
        // u = e - (e.n) n ; v = n x u
        double en = e[0] * normal[0] + e[1] * normal[1] + e[2] * normal[2];
        double nn = 0;
        for (int c = 0; c < 3; ++c) u[c] = e[c] - en * normal[c], nn += u[c] * u[c];
        nn = std::sqrt(std::max(nn, 1e-300));
        for (int c = 0; c < 3; ++c) u[c] /= nn;
        v[0] = normal[1] * u[2] - normal[2] * u[1];
        v[1] = normal[2] * u[0] - normal[0] * u[2];
        v[2] = normal[0] * u[1] - normal[1] * u[0];
        std::vector<std::array<double, 2>> pp(verts.size());
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const Vec& p = X.pts[verts[k]];
            pp[k] = {p[0] * u[0] + p[1] * u[1] + p[2] * u[2],
                     p[0] * v[0] + p[1] * v[1] + p[2] * v[2]};
        }
        std::vector<int> keep;
        for (int k : hull2d_local(pp)) keep.push_back(verts[k]);
        if ((int)keep.size() < 2) keep = verts;
        std::sort(keep.begin(), keep.end());
        return keep;
    }
    return extreme_subset(X, verts);
}

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool small_rational(double x, long long max_den, long long& num, long long& den) {
    double a = std::fabs(x);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = a;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 2e18) return false;
        long long ai = (long long)fl;
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return false;
    if (std::fabs(a - (double)p1 / (double)q1) > 1e-9 * std::max(1.0, a)) return false;
    num = (x < 0 ? -p1 : p1);
    den = q1;
    return true;
}

// Clean up a hyperplane direction: drop noise entries, reconstruct small
// rational ratios when possible, normalize to unit length.
Vec snap_direction(Vec a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    if (m <= 0.0) return a;
    for (double& v : a) {
        v /= m;
        if (std::fabs(v) <= 1e-9) v = 0.0;
    }
    std::vector<long long> num(a.size()), den(a.size());
    bool all_rat = true;
    long long L = 1;
    for (std::size_t c = 0; c < a.size() && all_rat; ++c) {
        if (a[c] == 0.0) {
            num[c] = 0;
            den[c] = 1;
            continue;
        }
        if (!small_rational(a[c], 1024, num[c], den[c])) all_rat = false;
        if (all_rat) {
            long long g = gcd_ll(L, den[c]);
            if (L / g > 1000000 / den[c]) all_rat = false;
            else L = L / g * den[c];
        }
    }
    if (all_rat) {
        std::vector<long long> k(a.size());
        long long g = 0;
        for (std::size_t c = 0; c < a.size(); ++c) {
            k[c] = num[c] * (L / den[c]);
            g = gcd_ll(g, k[c]);
        }
        if (g > 0)
            for (std::size_t c = 0; c < a.size(); ++c) a[c] = (double)(k[c] / g);
    }
    double n2 = 0.0;
    for (double v : a) n2 += v * v;
    n2 = std::sqrt(n2);
    if (n2 > 0)
        for (double& v : a) v /= n2;
    return a;
}

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void join(int a, int b) { p[find(a)] = find(b); }
};

struct Located {
    int simplex = -1;
    Vec bary;
};

Located bary_in(const PointConfig& X, const std::vector<std::vector<int>>& simplices, int s,
                const Vec& x) {
    const int d = X.dim;
    const auto& V = simplices[s];
    std::vector<ld> M((std::size_t)d * d);
    std::vector<ld> rhs(d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c)
            M[(std::size_t)r * d + c] = (ld)X.pts[V[c + 1]][r] - (ld)X.pts[V[0]][r];
        rhs[r] = (ld)x[r] - (ld)X.pts[V[0]][r];
    }
    Located out;
    if (!solve_dense(M, rhs, d)) return out;
    out.simplex = s;
    out.bary.resize(d + 1);
    ld l0 = 1.0L;
    for (int c = 0; c < d; ++c) {
        out.bary[c + 1] = (double)rhs[c];
        l0 -= rhs[c];
    }
    out.bary[0] = (double)l0;
    return out;
}

struct WalkResult {
    int simplex = -1;  // -1: outside
    Vec bary;
};

WalkResult walk_locate(const PointConfig& X, const TentSubdivision& T, const Vec& x, int start) {
    const int ns = (int)T.simplices.size();
    WalkResult res;
    if (ns == 0) return res;
    int cur = (start >= 0 && start < ns) ? start : 0;
    const double tol = 1e-9;
    int steps = 0;
    std::vector<char> seen;
    while (steps++ <= 2 * ns + 8) {
        Located loc = bary_in(X, T.simplices, cur, x);
        if (loc.simplex < 0) break;  // flat simplex, fall through to scan
        int worst = -1;
        double wv = -tol;
        for (int k = 0; k <= X.dim; ++k)
            if (loc.bary[k] < wv) {
                wv = loc.bary[k];
                worst = k;
            }
        if (worst < 0) {
            res.simplex = cur;
            res.bary = loc.bary;
            return res;
        }
        int nxt = T.simplex_nbr[cur][worst];
        if (nxt < 0) return res;  // walked out of the support
        if (seen.empty()) seen.assign(ns, 0);
        if (seen[nxt]) break;  // cycle: defer to the scan
        seen[nxt] = 1;
        cur = nxt;
    }
    // Robust fallback: linear scan, keep the simplex with the best worst-case
    // barycentric coordinate.
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < ns; ++s) {
        Located loc = bary_in(X, T.simplices, s, x);
        if (loc.simplex < 0) continue;
        double mn = *std::min_element(loc.bary.begin(), loc.bary.end());
        if (mn > best) {
            best = mn;
            res.simplex = s;
            res.bary = loc.bary;
        }
    }
    if (best < -tol) res.simplex = -1;
    return res;
}

struct Assembled {
    TentSubdivision T;
    bool ok = true;
    std::string why;

    void fail(const char* reason) {
        ok = false;
        if (why.empty()) why = reason;
    }
};

static bool build_trace() {
    static bool on = std::getenv("TENTMLE_BUILD_TRACE") != nullptr;
    return on;
}
static double trace_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Assembled assemble(const PointConfig& X, const Vec& trueH, const Vec& ph) {
    const int d = X.dim;
    const int n = (int)X.pts.size();
    double tr0 = build_trace() ? trace_ms() : 0.0;
    Assembled out;
    TentSubdivision& T = out.T;
    T.dim = d;

    ld lower_sum = -1.0L;
    std::vector<std::vector<int>> simp;
    if (n == d + 1) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        if (std::fabs((double)projected_det(X, all)) <= 1e-12 * std::pow(coord_scale(X), d))
            throw DegenerateHull("support is lower-dimensional");
        simp.push_back(all);
    } else if (d == 1) {
        simp = envelope_1d(X, ph);
    } else if (d == 2) {
        simp = Hull3(X, ph).upper_facets();
    } else {
        bool probe = n <= 16;
        simp = brute_upper_hull(X, ph, probe ? &lower_sum : nullptr);
    }

    if (build_trace()) {
        std::fprintf(stderr, "[build] hull %.1f ms (%d raw simplices)\n", trace_ms() - tr0,
                     (int)simp.size());
        tr0 = trace_ms();
    }
    double cs = coord_scale(X);
    const double vol_tol = 1e-12 * std::pow(cs, d);
    for (auto& s : simp) std::sort(s.begin(), s.end());
    std::sort(simp.begin(), simp.end());
    simp.erase(std::unique(simp.begin(), simp.end()), simp.end());
    for (const auto& s : simp)
        if (std::fabs((double)projected_det(X, s)) > vol_tol) T.simplices.push_back(s);
    if (T.simplices.empty()) throw DegenerateHull("support is lower-dimensional");
    const int ns = (int)T.simplices.size();

    // Face adjacency.
    T.simplex_nbr.assign(ns, std::vector<int>(d + 1, -1));
    {
        std::map<std::vector<int>, std::pair<int, int>> open;
        for (int s = 0; s < ns; ++s)
            for (int k = 0; k <= d; ++k) {
                std::vector<int> face;
                for (int j = 0; j <= d; ++j)
                    if (j != k) face.push_back(T.simplices[s][j]);
                auto it = open.find(face);
                if (it == open.end())
                    open[face] = {s, k};
                else {
                    if (it->second.first < 0) {
                        out.fail("a face is shared by three simplices");
                        continue;
                    }
                    T.simplex_nbr[s][k] = it->second.first;
                    T.simplex_nbr[it->second.first][it->second.second] = s;
                    it->second.first = -1;
                }
            }
    }
    if (!out.ok) return out;

    if (build_trace()) {
        std::fprintf(stderr, "[build] adjacency %.1f ms (%d simplices)\n", trace_ms() - tr0, ns);
        tr0 = trace_ms();
    }
    // Per-simplex affine pieces from the unperturbed heights.
    std::vector<AffineFn> sfn(ns);
    std::vector<double> svol(ns);
    std::vector<char> fit_bad(ns, 0);
    for_each_index(ns, true, [&](std::size_t s) {
        svol[s] = std::fabs((double)projected_det(X, T.simplices[s]));
        try {
            sfn[s] = fit_affine(X, T.simplices[s], trueH);
        } catch (const DegenerateSimplex&) {
            fit_bad[s] = 1;  // must not leak out of a parallel region
        }
    });
    for (char b : fit_bad)
        if (b) throw DegenerateSimplex("flat simplex survived the volume filter");
    T.domain_volume = 0.0;
    {
        double fact = 1.0;
        for (int k = 2; k <= d; ++k) fact *= k;
        std::vector<double> vols(svol);
        std::sort(vols.begin(), vols.end());
        for (double v : vols) T.domain_volume += v;
        T.domain_volume /= fact;
    }

    if (build_trace()) {
        std::fprintf(stderr, "[build] fits %.1f ms\n", trace_ms() - tr0);
        tr0 = trace_ms();
    }
    // Merge coplanar neighbours; agreement is judged on the simplex vertices
    // so the verdict does not depend on the tie-breaking perturbation.
    double hs = 1.0;
    for (double v : trueH) hs = std::max(hs, std::fabs(v));
    const double agree = 1e-9 * hs;
    DSU dsu(ns);
    for (int s = 0; s < ns; ++s)
        for (int k = 0; k <= d; ++k) {
            int t = T.simplex_nbr[s][k];
            if (t < s) continue;
            bool same = true;
            for (int v : T.simplices[s])
                if (std::fabs(sfn[s](X.pts[v]) - sfn[t](X.pts[v])) > agree) same = false;
            for (int v : T.simplices[t])
                if (same && std::fabs(sfn[s](X.pts[v]) - sfn[t](X.pts[v])) > agree) same = false;
            if (same) dsu.join(s, t);
        }

    std::map<int, int> root_to_cell;
    T.simplex_cell.assign(ns, -1);
    for (int s = 0; s < ns; ++s) {
        int r = dsu.find(s);
        auto it = root_to_cell.find(r);
        if (it == root_to_cell.end()) {
            root_to_cell[r] = (int)T.cells.size();
            T.cells.push_back({});
        }
        int cid = root_to_cell[r];
        T.simplex_cell[s] = cid;
        T.cells[cid].simplices.push_back(s);
    }
    for (auto& c : T.cells) {
        int best = c.simplices[0];
        for (int s : c.simplices)
            if (svol[s] > svol[best]) best = s;
        c.fn = sfn[best];
        std::vector<int> verts;
        for (int s : c.simplices)
            for (int v : T.simplices[s]) verts.push_back(v);
        c.points = extreme_subset(X, verts);
    }

    if (build_trace()) {
        std::fprintf(stderr, "[build] merge+cells %.1f ms (%d cells)\n", trace_ms() - tr0,
                     (int)T.cells.size());
        tr0 = trace_ms();
    }
    // Tent value at every configuration point.
    T.hull_value.assign(n, 0.0);
    T.height_gap.assign(n, 0.0);
    T.tight.assign(n, 0);
    std::vector<char> is_vertex(n, 0);
    for (const auto& s : T.simplices)
        for (int v : s) is_vertex[v] = 1;
    int cursor = 0;
    for (int i : lex_order(X)) {
        if (is_vertex[i]) {
            T.hull_value[i] = trueH[i];
        } else {
            WalkResult w = walk_locate(X, T, X.pts[i], cursor);
            if (w.simplex < 0) {
                out.fail("a configuration point fell outside the triangulation");
                T.hull_value[i] = trueH[i];
            } else {
                cursor = w.simplex;
                double v = 0.0;
                for (int k = 0; k <= d; ++k) v += w.bary[k] * trueH[T.simplices[w.simplex][k]];
                T.hull_value[i] = v;
            }
        }
        T.height_gap[i] = T.hull_value[i] - trueH[i];
        if (T.height_gap[i] < -1e-7 * hs) out.fail("a lifted point pierces the hull");
        if (T.height_gap[i] < 0.0) T.height_gap[i] = 0.0;
        T.tight[i] = (T.height_gap[i] <= 1e-9 * hs) ? 1 : 0;
    }

    if (build_trace()) {
        std::fprintf(stderr, "[build] hull_value %.1f ms\n", trace_ms() - tr0);
        tr0 = trace_ms();
    }
    // Walls between distinct cells.
    std::map<std::pair<int, int>, std::vector<int>> wall_verts;
    for (int s = 0; s < ns; ++s)
        for (int k = 0; k <= d; ++k) {
            int t = T.simplex_nbr[s][k];
            if (t < s) continue;
            int ca = T.simplex_cell[s], cb = T.simplex_cell[t];
            if (ca == cb) continue;
            auto key = std::minmax(ca, cb);
            auto& dst = wall_verts[key];
            for (int j = 0; j <= d; ++j)
                if (j != k) dst.push_back(T.simplices[s][j]);
        }
    for (auto& [key, verts] : wall_verts) {
        Wall w;
        w.cell_a = key.first;
        w.cell_b = key.second;
        const AffineFn& fa = T.cells[w.cell_a].fn;
        const AffineFn& fb = T.cells[w.cell_b].fn;
        Vec raw(d);
        for (int c = 0; c < d; ++c) raw[c] = fa.a[c] - fb.a[c];
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        // The gradient difference is orthogonal to the wall in exact
        // arithmetic but picks up noise from ill-conditioned simplices, so
        // project out the wall's own tangent directions before normalizing.
        {
            std::vector<Vec> tangent;
            for (std::size_t k = 1; k < verts.size() && (int)tangent.size() < d - 1; ++k) {
                Vec v(d);
                for (int c = 0; c < d; ++c)
                    v[c] = X.pts[verts[k]][c] - X.pts[verts[0]][c];
                for (auto& b : tangent) {
                    double dot = 0;
                    for (int c = 0; c < d; ++c) dot += v[c] * b[c];
                    for (int c = 0; c < d; ++c) v[c] -= dot * b[c];
                }
                double nn = 0;
                for (double x : v) nn += x * x;
                nn = std::sqrt(nn);
                if (nn > 1e-12 * cs) {
                    for (double& x : v) x /= nn;
                    tangent.push_back(std::move(v));
                }
            }
            for (auto& b : tangent) {
                double dot = 0;
                for (int c = 0; c < d; ++c) dot += raw[c] * b[c];
                for (int c = 0; c < d; ++c) raw[c] -= dot * b[c];
            }
        }
        Vec snapped = snap_direction(raw);
        auto fit = [&](const Vec& nrm, double& offset) {
            double acc = 0.0;
            for (int v : verts) {
                double s = 0;
                for (int c = 0; c < d; ++c) s += nrm[c] * X.pts[v][c];
                acc += s;
            }
            offset = acc / (double)verts.size();
            double worst = 0.0;
            for (int v : verts) {
                double s = -offset;
                for (int c = 0; c < d; ++c) s += nrm[c] * X.pts[v][c];
                worst = std::max(worst, std::fabs(s));
            }
            return worst;
        };
        double off_s = 0.0;
        double resid = fit(snapped, off_s);
        if (resid <= 1e-8 * cs) {
            w.normal = snapped;
            w.offset = off_s;
        } else {
            Vec unit = raw;
            double n2 = 0;
            for (double v : unit) n2 += v * v;
            n2 = std::sqrt(std::max(n2, 1e-300));
            for (double& v : unit) v /= n2;
            double off_u = 0.0;
            double resid_u = fit(unit, off_u);
            if (resid_u <= resid) {
                w.normal = unit;
                w.offset = off_u;
            } else {
                w.normal = snapped;
                w.offset = off_s;
            }
        }
        w.points = wall_extremes(X, verts, w.normal);
        w.bimonotone = is_bimonotone_hyperplane(w.normal);
        T.walls.push_back(std::move(w));
    }

    if (build_trace()) {
        std::fprintf(stderr, "[build] walls %.1f ms (%d walls)\n", trace_ms() - tr0,
                     (int)T.walls.size());
        tr0 = trace_ms();
    }
    // Cross-checks against independent quantities.
    if (d == 1) {
        double lo = X.pts[0][0], hi = X.pts[0][0];
        for (const auto& p : X.pts) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
        if (std::fabs(T.domain_volume - (hi - lo)) > 1e-8 * std::max(1.0, hi - lo))
            out.fail("covered length mismatch");
    } else if (d == 2) {
        std::vector<std::array<double, 2>> pp(n);
        for (int i = 0; i < n; ++i) pp[i] = {X.pts[i][0], X.pts[i][1]};
        auto hull = hull2d_local(pp);
        ld area2 = 0.0L;
        for (std::size_t k = 0; k < hull.size(); ++k) {
            const auto& a = pp[hull[k]];
            const auto& b = pp[hull[(k + 1) % hull.size()]];
            area2 += (ld)a[0] * b[1] - (ld)a[1] * b[0];
        }
        double area = std::fabs((double)area2) / 2.0;
        if (std::fabs(T.domain_volume - area) > 1e-8 * std::max(1.0, area))
            out.fail("covered area mismatch");
    } else if (lower_sum >= 0.0L) {
        double fact = 1.0;
        for (int k = 2; k <= d; ++k) fact *= k;
        double lower_vol = (double)lower_sum / fact;
        if (std::fabs(T.domain_volume - lower_vol) > 1e-8 * std::max(1.0, lower_vol))
            out.fail("covered volume mismatch");
    }
    return out;
}

}  // namespace

TentSubdivision build_tent(const PointConfig& X, const Vec& heights) {
    const int d = X.dim;
    const int n = (int)X.pts.size();
    if (d < 1) throw Error("configuration has no dimension");
    if ((int)heights.size() != n) throw Error("height vector size mismatch");
    for (double v : heights)
        if (!std::isfinite(v)) throw Error("non-finite height");
    if (n < d + 1) throw DegenerateHull("fewer points than dimension plus one");

    double hs = 1.0;
    for (double v : heights) hs = std::max(hs, std::fabs(v));
    std::vector<int> rank(n);
    {
        std::vector<int> ord = lex_order(X);
        for (int k = 0; k < n; ++k) rank[ord[k]] = k;
    }

    const double kappa[3] = {1e-11, 1e-9, 1e-7};
    std::string why;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::uint64_t salt = splitmix64(0xa5e11u + (std::uint64_t)attempt);
        Vec ph(heights);
        for (int i = 0; i < n; ++i)
            ph[i] += kappa[attempt] * hs * hash_unit((std::uint64_t)rank[i], salt);
        try {
            Assembled a = assemble(X, heights, ph);
            if (a.ok) return std::move(a.T);
            why = a.why;
        } catch (const DegenerateHull&) {
            if (attempt == 2) throw;
        } catch (const DegenerateSimplex&) {
            if (attempt == 2) throw;
        }
    }
    throw DegenerateHull("tent construction failed validation (" + why + ")");
}

int locate_simplex(const PointConfig& X, const TentSubdivision& T, const Vec& x, Vec* bary) {
    if ((int)x.size() != X.dim) throw Error("point dimension mismatch");
    WalkResult w = walk_locate(X, T, x, 0);
    if (w.simplex >= 0 && bary) *bary = w.bary;
    return w.simplex;
}

double eval_tent(const PointConfig& X, const TentSubdivision& T, const Vec& x) {
    WalkResult w = walk_locate(X, T, x, 0);
    if (w.simplex < 0) return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto& S = T.simplices[w.simplex];
    for (int k = 0; k <= X.dim; ++k) v += w.bary[k] * T.hull_value[S[k]];
    return v;
}

bool is_tight(const TentSubdivision& T, int point_index, double tol) {
    double scale = std::max(1.0, std::fabs(T.hull_value[point_index]));
    return T.height_gap[point_index] <= tol * scale;
}

bool is_supermodular_tent(const TentSubdivision& T, std::vector<int>* offending) {
    if (offending) offending->clear();
    bool ok = true;
    for (std::size_t w = 0; w < T.walls.size(); ++w)
        if (!T.walls[w].bimonotone) {
            ok = false;
            if (offending) offending->push_back((int)w);
        }
    return ok;
}

bool is_lnatural_tent(const PointConfig& X, const TentSubdivision& T,
                      std::vector<int>* offending) {
    if (offending) offending->clear();
    const int d = X.dim;
    auto difference_or_box = [&](const Vec& nraw) {
        Vec a = snap_direction(nraw);
        int nz = 0;
        double m = 0.0;
        for (double v : a) m = std::max(m, std::fabs(v));
        if (m <= 0.0) return false;
        std::vector<int> idx;
        for (int c = 0; c < d; ++c)
            if (std::fabs(a[c]) > 1e-9 * m) {
                ++nz;
                idx.push_back(c);
            }
        if (nz == 1) return true;
        if (nz == 2) return std::fabs(a[idx[0]] + a[idx[1]]) <= 1e-9 * m;
        return false;
    };

    bool ok = true;
    for (std::size_t cid = 0; cid < T.cells.size(); ++cid) {
        const Cell& cell = T.cells[cid];
        bool bad = false;
        for (int s : cell.simplices) {
            for (int k = 0; k <= d && !bad; ++k) {
                int t = T.simplex_nbr[s][k];
                if (t >= 0 && T.simplex_cell[t] == (int)cid) continue;  // interior face
                Vec nrm;
                if (t >= 0) {
                    const AffineFn& fa = cell.fn;
                    const AffineFn& fb = T.cells[T.simplex_cell[t]].fn;
                    nrm.resize(d);
                    for (int c = 0; c < d; ++c) nrm[c] = fa.a[c] - fb.a[c];
                } else {
                    // support boundary: hyperplane through the face vertices
                    std::vector<int> face;
                    for (int j = 0; j <= d; ++j)
                        if (j != k) face.push_back(T.simplices[s][j]);
                    if (d == 1) {
                        nrm = {1.0};
                    } else if (d == 2) {
                        double ux = X.pts[face[1]][0] - X.pts[face[0]][0];
                        double uy = X.pts[face[1]][1] - X.pts[face[0]][1];
                        nrm = {-uy, ux};
                    } else {
                        // nullspace of the (d-1) edge vectors via cofactors
                        std::vector<ld> edges((std::size_t)(d - 1) * d);
                        for (int r = 0; r + 1 < d; ++r)
                            for (int c = 0; c < d; ++c)
                                edges[(std::size_t)r * d + c] =
                                    (ld)X.pts[face[r + 1]][c] - (ld)X.pts[face[0]][c];
                        nrm.assign(d, 0.0);
                        std::vector<ld> minor((std::size_t)(d - 1) * (d - 1));
                        for (int skip = 0; skip < d; ++skip) {
                            for (int r = 0; r + 1 < d; ++r) {
                                int cc = 0;
                                for (int c = 0; c < d; ++c) {
                                    if (c == skip) continue;
                                    minor[(std::size_t)r * (d - 1) + cc++] =
                                        edges[(std::size_t)r * d + c];
                                }
                            }
                            ld dt = det_dense(minor, d - 1);
                            nrm[skip] = (double)((skip % 2) ? -dt : dt);
                        }
                    }
                }
                if (!difference_or_box(nrm)) bad = true;
            }
            if (bad) break;
        }
        if (bad) {
            ok = false;
            if (offending) offending->push_back((int)cid);
        }
    }
    return ok;
}

}  // namespace tentmle
