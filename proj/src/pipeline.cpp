#include "tentmle/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tentmle {

std::string model_name(Model m) {
    switch (m) {
        case Model::logconcave: return "lc";
        case Model::mtp2: return "mtp2";
        case Model::llc: return "llc";
    }
    return "?";
}

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double coord_span(const std::vector<Vec>& pts) {
    double s = 1.0;
    for (auto& p : pts)
        for (double v : p) s = std::max(s, std::fabs(v));
    return s;
}

// Sort lexicographically and merge exact duplicates, summing their weights.
void sort_merge(std::vector<Vec>& pts, std::vector<double>& wts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
    std::vector<Vec> np;
    std::vector<double> nw;
    for (std::size_t k : order) {
        if (!np.empty() && np.back() == pts[k])
            nw.back() += wts[k];
        else {
            np.push_back(pts[k]);
            nw.push_back(wts[k]);
        }
    }
    pts = std::move(np);
    wts = std::move(nw);
}

struct CanonicalInput {
    PointConfig cfg;
    WeightVector w;
};

CanonicalInput canonical_input(const PointConfig& X, const WeightVector& w) {
    if (X.dim <= 0 || X.pts.empty()) throw Error("empty point configuration");
    for (auto& p : X.pts)
        if ((int)p.size() != X.dim) throw Error("point dimension mismatch");
    std::vector<double> raw = w.w.empty() ? uniform_weights(X.size()).w : w.w;
    if (raw.size() != X.size()) throw Error("weight count does not match sample count");
    std::vector<Vec> pts = X.pts;
    sort_merge(pts, raw);
    CanonicalInput ci;
    ci.cfg.dim = X.dim;
    ci.cfg.pts = std::move(pts);
    ci.cfg.origin_count = ci.cfg.pts.size();
    ci.w = normalize_weights(std::move(raw));
    return ci;
}

int affine_rank(const std::vector<Vec>& pts, int dim) {
    if (pts.empty()) return -1;
    double cs = coord_span(pts);
    std::vector<Vec> basis;
    for (std::size_t i = 1; i < pts.size() && (int)basis.size() < dim; ++i) {
        Vec v(dim);
        for (int c = 0; c < dim; ++c) v[c] = pts[i][c] - pts[0][c];
        for (auto& b : basis) {
            double dot = 0;
            for (int c = 0; c < dim; ++c) dot += v[c] * b[c];
            for (int c = 0; c < dim; ++c) v[c] -= dot * b[c];
        }
        double nn = 0;
        for (double x : v) nn += x * x;
        nn = std::sqrt(nn);
        if (nn > 1e-9 * cs) {
            for (double& x : v) x /= nn;
            basis.push_back(std::move(v));
        }
    }
    return (int)basis.size();
}

void require_full_dim(const PointConfig& cfg) {
    if (affine_rank(cfg.pts, cfg.dim) < cfg.dim)
        throw DegenerateSupport("configuration spans a lower-dimensional affine subspace");
}

// Solve, shift so the density integrates to one, rebuild the tent and report.
EstimateResult run_estimate(Model model, PointConfig cfg, WeightVector wp,
                            HeightIneqSystem system, const EstimateSettings& s) {
    EstimateResult r;
    r.model = model;
    r.run = frank_wolfe(cfg, wp, system, s.solver);
    Vec y = r.run.y;
    if (s.renormalize && r.run.integral > 0.0) {
        double shift = -std::log(r.run.integral);
        for (double& v : y) v += shift;
    }
    r.tent = build_tent(cfg, y);
    r.integral = integral_exp_tent(cfg, r.tent, y, s.solver.parallel);
    r.loglik = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) r.loglik += wp[i] * r.tent.hull_value[i];
    r.supermodular_ok = is_supermodular_tent(r.tent);
    r.lnatural_ok = is_lnatural_tent(cfg, r.tent);
    r.heights = std::move(y);
    r.config = std::move(cfg);
    r.weights = std::move(wp);
    return r;
}

// Extreme points of conv(X): a tent with constant heights has a single
// linearity cell whose recorded points are exactly the extreme ones.
std::vector<Vec> hull_vertices(const PointConfig& cfg) {
    TentSubdivision flat = build_tent(cfg, Vec(cfg.size(), 0.0));
    std::vector<Vec> out;
    if (flat.cells.size() == 1) {
        for (int i : flat.cells[0].points) out.push_back(cfg.pts[i]);
    } else {
        for (auto& p : cfg.pts) out.push_back(p);  // fallback: keep everything
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

// Facet description of conv(vrep) for d <= 3 (small vertex counts only).
std::vector<LinearIneq> hull_hrep(const std::vector<Vec>& vr, int dim) {
    std::vector<LinearIneq> rows;
    if (vr.empty() || dim > 3) return rows;
    double cs = coord_span(vr);
    double tol = 1e-9 * cs;
    auto push_plane = [&](Vec a, double b) {
        double nn = 0;
        for (double v : a) nn += v * v;
        nn = std::sqrt(nn);
        if (nn < 1e-12) return;
        for (double& v : a) v /= nn;
        b /= nn;
        double lo = 1e300, hi = -1e300;
        for (auto& p : vr) {
            double s = -b;
            for (int c = 0; c < dim; ++c) s += a[c] * p[c];
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (lo < -tol && hi > tol) return;  // not supporting
        if (hi <= tol) {                    // flip so the polytope is on the >= side
            for (double& v : a) v = -v;
            b = -b;
        }
        for (auto& r : rows) {
            bool same = std::fabs(r.b - b) <= 1e-7 * cs;
            for (int c = 0; c < dim && same; ++c)
                if (std::fabs(r.a[c] - a[c]) > 1e-7) same = false;
            if (same) return;
        }
        rows.push_back({std::move(a), b});
    };
    std::size_t m = vr.size();
    if (dim == 1) {
        push_plane({1.0}, vr.front()[0]);
        push_plane({-1.0}, -vr.back()[0]);
    } else if (dim == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                double ax = vr[j][1] - vr[i][1];
                double ay = vr[i][0] - vr[j][0];
                push_plane({ax, ay}, ax * vr[i][0] + ay * vr[i][1]);
            }
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k) {
                    Vec u(3), v(3);
                    for (int c = 0; c < 3; ++c) {
                        u[c] = vr[j][c] - vr[i][c];
                        v[c] = vr[k][c] - vr[i][c];
                    }
                    Vec a = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                             u[0] * v[1] - u[1] * v[0]};
                    double b = a[0] * vr[i][0] + a[1] * vr[i][1] + a[2] * vr[i][2];
                    push_plane(std::move(a), b);
                }
    }
    return rows;
}

Vec round_point(const Vec& p, double scale) {
    Vec q(p.size());
    for (std::size_t c = 0; c < p.size(); ++c) {
        double v = p[c] * scale;
        if (std::fabs(v) > 9e15) throw Error("sample magnitude too large for rounding");
        q[c] = (double)std::llround(v) / scale;
        if (q[c] == 0.0) q[c] = 0.0;  // normalize -0
    }
    return q;
}

}  // namespace

EstimateResult mle_logconcave(const PointConfig& X, const WeightVector& w,
                              const EstimateSettings& s) {
    CanonicalInput ci = canonical_input(X, w);
    if ((int)ci.cfg.size() < ci.cfg.dim + 1)
        throw DegenerateSupport("need at least d+1 distinct samples");
    require_full_dim(ci.cfg);
    HeightIneqSystem empty;
    empty.kind = IneqKind::supermodular;
    empty.n = (int)ci.cfg.size();
    EstimateResult r = run_estimate(Model::logconcave, ci.cfg, ci.w, empty, s);
    r.support.dim = ci.cfg.dim;
    r.support.vrep = hull_vertices(r.config);
    r.support.hrep = hull_hrep(r.support.vrep, ci.cfg.dim);
    return r;
}

EstimateResult mle_mtp2_2d(const PointConfig& X, const WeightVector& w,
                           const EstimateSettings& s) {
    CanonicalInput ci = canonical_input(X, w);
    if (ci.cfg.dim != 2) throw Error("grid closure estimator requires dimension 2");
    if (ci.cfg.size() < 3) throw InsufficientSamples("need at least 3 distinct samples");
    Grid2dClosure gc = minmax_closure_grid2d(ci.cfg);
    require_full_dim(gc.config);
    WeightVector wp = pad_weights(ci.w, gc.config.size());
    HeightIneqSystem system = supermodular_constraints_2d(gc.table, (int)gc.config.size());
    EstimateResult r = run_estimate(Model::mtp2, std::move(gc.config), std::move(wp),
                                    std::move(system), s);
    r.support = mmconv(ci.cfg);
    return r;
}

EstimateResult mle_mtp2_general(const PointConfig& X, const WeightVector& w,
                                const EstimateSettings& s) {
    CanonicalInput ci = canonical_input(X, w);
    if (ci.cfg.size() < 3) throw InsufficientSamples("need at least 3 distinct samples");
    PointConfig closure = minmax_closure_exact(ci.cfg);
    require_full_dim(closure);
    WeightVector wp = pad_weights(ci.w, closure.size());
    HeightIneqSystem system = supermodular_constraints_general(closure);
    EstimateResult r = run_estimate(Model::mtp2, std::move(closure), std::move(wp),
                                    std::move(system), s);
    r.support = mmconv(ci.cfg);
    return r;
}

EstimateResult mle_llc(const PointConfig& X, const WeightVector& w, const EstimateSettings& s) {
    if (s.round_decimals < 0 || s.round_decimals > 12)
        throw Error("round_decimals out of range");
    CanonicalInput ci = canonical_input(X, w);
    double scale = std::pow(10.0, s.round_decimals);
    std::vector<Vec> pts;
    for (auto& p : ci.cfg.pts) pts.push_back(round_point(p, scale));
    std::vector<double> wts = ci.w.w;
    sort_merge(pts, wts);
    if (pts.size() < 2) throw InsufficientSamples("need at least 2 distinct rounded samples");
    PointConfig rounded;
    rounded.dim = ci.cfg.dim;
    rounded.pts = std::move(pts);
    rounded.origin_count = rounded.pts.size();
    PointConfig ext = discrete_l_extension(rounded);
    require_full_dim(ext);
    WeightVector wp = pad_weights(normalize_weights(std::move(wts)), ext.size());
    HeightIneqSystem system = lnatural_constraints(ext);
    EstimateResult r =
        run_estimate(Model::llc, std::move(ext), std::move(wp), std::move(system), s);
    r.support = l_extension_polytope(rounded);
    if (rounded.dim <= 3 && r.support.vrep.empty())
        r.support.vrep = enumerate_vertices(r.support.hrep, rounded.dim);
    return r;
}

namespace {

// Heights whose tent coarsens the reference subdivision: the tent must stay
// affine on every cell of the reference and can only fold concavely across
// its walls.  One circuit row per internal triangulation facet: writing the
// far apex q as an affine combination of the facet points and the near apex p,
// the fold reads  sum_i beta_i y_i + beta_p y_p - y_q  (beta_p < 0 since p, q
// lie on opposite sides of the facet).  A facet between two simplices of the
// same merged cell must stay flat (fold == 0, emitted as a pair of opposite
// rows); a facet on a wall gives the one-sided concavity row.
HeightIneqSystem coarsening_system(const PointConfig& xp, const TentSubdivision& refined) {
    HeightIneqSystem S;
    S.kind = IneqKind::supermodular;
    S.n = (int)xp.size();
    const int d = xp.dim;
    const int ns = (int)refined.simplices.size();
    for (int s = 0; s < ns; ++s)
        for (int k = 0; k <= d; ++k) {
            int nb = refined.simplex_nbr[s][k];
            if (nb < s) continue;  // boundary, or already emitted from the other side
            const auto& S1 = refined.simplices[s];
            const auto& S2 = refined.simplices[nb];
            int p = S1[k];
            int q = -1;
            for (int v : S2) {
                bool in_facet = false;
                for (int j = 0; j <= d; ++j)
                    if (j != k && S1[j] == v) {
                        in_facet = true;
                        break;
                    }
                if (!in_facet && v != p) q = v;
            }
            if (q < 0) continue;  // neighbours share all vertices: degenerate
            // Affine coordinates of q in the frame (facet points, p): solve
            // [x_1 .. x_d x_p; 1 .. 1 1] beta = [x_q; 1].
            std::vector<int> frame;
            for (int j = 0; j <= d; ++j)
                if (j != k) frame.push_back(S1[j]);
            frame.push_back(p);
            const int m = d + 1;
            std::vector<double> A((std::size_t)m * (m + 1), 0.0);
            for (int col = 0; col < m; ++col) {
                for (int r = 0; r < d; ++r) A[(std::size_t)r * (m + 1) + col] = xp.pts[frame[col]][r];
                A[(std::size_t)d * (m + 1) + col] = 1.0;
            }
            for (int r = 0; r < d; ++r) A[(std::size_t)r * (m + 1) + m] = xp.pts[q][r];
            A[(std::size_t)d * (m + 1) + m] = 1.0;
            for (int col = 0; col < m; ++col) {
                int piv = col;
                for (int r = col + 1; r < m; ++r)
                    if (std::fabs(A[(std::size_t)r * (m + 1) + col]) >
                        std::fabs(A[(std::size_t)piv * (m + 1) + col]))
                        piv = r;
                if (std::fabs(A[(std::size_t)piv * (m + 1) + col]) < 1e-12)
                    throw DegenerateSimplex("degenerate facet in the coarsening system");
                if (piv != col)
                    for (int c = col; c <= m; ++c)
                        std::swap(A[(std::size_t)piv * (m + 1) + c], A[(std::size_t)col * (m + 1) + c]);
                double pv = A[(std::size_t)col * (m + 1) + col];
                for (int c = col; c <= m; ++c) A[(std::size_t)col * (m + 1) + c] /= pv;
                for (int r = 0; r < m; ++r) {
                    if (r == col) continue;
                    double f = A[(std::size_t)r * (m + 1) + col];
                    if (f == 0.0) continue;
                    for (int c = col; c <= m; ++c)
                        A[(std::size_t)r * (m + 1) + c] -= f * A[(std::size_t)col * (m + 1) + c];
                }
            }
            HeightIneq row;
            double scale = 1.0;
            for (int col = 0; col < m; ++col)
                scale = std::max(scale, std::fabs(A[(std::size_t)col * (m + 1) + m]));
            for (int col = 0; col < m; ++col) {
                double beta = A[(std::size_t)col * (m + 1) + m] / scale;
                if (std::fabs(beta) > 1e-12) row.terms.push_back({frame[col], beta});
            }
            row.terms.push_back({q, -1.0 / scale});
            if (refined.simplex_cell[s] == refined.simplex_cell[nb]) {
                HeightIneq neg;
                for (auto& [i, c] : row.terms) neg.terms.push_back({i, -c});
                S.rows.push_back(std::move(row));
                S.rows.push_back(std::move(neg));
            } else {
                S.rows.push_back(std::move(row));
            }
        }
    return S;
}

}  // namespace

CandidateResult candidate_bimonotone(const PointConfig& X, const WeightVector& w,
                                     const EstimateSettings& s) {
    CanonicalInput ci = canonical_input(X, w);
    if (!is_minmax_closed(ci.cfg))
        throw Error("candidate subdivision search needs a min-max closed configuration");
    EstimateResult lc = mle_logconcave(ci.cfg, ci.w, s);
    CandidateResult R;
    if (lc.supermodular_ok) {
        R.already_bimonotone = true;
        R.xprime = lc.config;
        R.refined = lc.tent;
        R.system = coarsening_system(R.xprime, R.refined);
        R.estimate = std::move(lc);
        return R;
    }

    int d = ci.cfg.dim;
    double cs = coord_span(lc.config.pts);
    double tol = 1e-9 * std::max(1.0, cs);

    // Cutting hyperplanes: one per distinct bimonotone interior wall.
    std::vector<std::pair<Vec, double>> cuts;
    for (auto& wall : lc.tent.walls) {
        if (!wall.bimonotone) continue;
        Vec a = wall.normal;
        double b = wall.offset;
        double nn = 0;
        for (double v : a) nn += v * v;
        nn = std::sqrt(nn);
        if (nn < 1e-12) continue;
        for (double& v : a) v /= nn;
        b /= nn;
        int lead = 0;
        while (lead < d && std::fabs(a[lead]) < 1e-9) ++lead;
        if (lead < d && a[lead] < 0) {
            for (double& v : a) v = -v;
            b = -b;
        }
        bool dup = false;
        for (auto& [ca, cb] : cuts) {
            bool same = std::fabs(cb - b) <= 1e-7 * std::max(1.0, cs);
            for (int c = 0; c < d && same; ++c)
                if (std::fabs(ca[c] - a[c]) > 1e-7) same = false;
            if (same) dup = true;
        }
        if (!dup) cuts.push_back({std::move(a), b});
    }

    // Slice every triangulation edge by every cut.
    std::vector<Vec> added;
    auto known = [&](const Vec& q) {
        for (auto& p : lc.config.pts) {
            bool same = true;
            for (int c = 0; c < d && same; ++c)
                if (std::fabs(p[c] - q[c]) > tol) same = false;
            if (same) return true;
        }
        for (auto& p : added) {
            bool same = true;
            for (int c = 0; c < d && same; ++c)
                if (std::fabs(p[c] - q[c]) > tol) same = false;
            if (same) return true;
        }
        return false;
    };
    for (auto& simplex : lc.tent.simplices)
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t j = i + 1; j < simplex.size(); ++j) {
                const Vec& p = lc.config.pts[simplex[i]];
                const Vec& q = lc.config.pts[simplex[j]];
                for (auto& [ca, cb] : cuts) {
                    double sp = -cb, sq = -cb;
                    for (int c = 0; c < d; ++c) {
                        sp += ca[c] * p[c];
                        sq += ca[c] * q[c];
                    }
                    if ((sp < -tol && sq > tol) || (sq < -tol && sp > tol)) {
                        double t = sp / (sp - sq);
                        Vec z(d);
                        for (int c = 0; c < d; ++c) z[c] = p[c] + t * (q[c] - p[c]);
                        if (!known(z)) added.push_back(std::move(z));
                    }
                }
            }
    std::sort(added.begin(), added.end(), lex_less);

    R.xprime.dim = d;
    R.xprime.pts = lc.config.pts;
    for (auto& p : added) R.xprime.pts.push_back(p);
    R.xprime.origin_count = lc.config.size();
    WeightVector wp = pad_weights(ci.w, R.xprime.size());

    // The sliced subdivision is the tent of the heights -sum_c |cut residual|:
    // concave, creased exactly on the cutting hyperplanes, affine on each
    // slice cell, and every cell vertex is a configuration point.
    Vec sliced(R.xprime.size());
    for (std::size_t i = 0; i < R.xprime.size(); ++i) {
        double kink = 0.0;
        for (auto& [ca, cb] : cuts) {
            double sv = -cb;
            for (int c = 0; c < d; ++c) sv += ca[c] * R.xprime.pts[i][c];
            kink += std::fabs(sv);
        }
        sliced[i] = -kink;
    }
    R.refined = build_tent(R.xprime, sliced);
    R.system = coarsening_system(R.xprime, R.refined);
    R.estimate = run_estimate(Model::mtp2, R.xprime, std::move(wp), R.system, s);
    R.estimate.support = mmconv(ci.cfg);
    return R;
}

}  // namespace tentmle
