#include "tentmle/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <vector>

namespace tentmle {

struct LpWarmState::Impl {
    bool valid = false;
    int nvar = -1;
    std::size_t nrows = 0;            // row count of the system this state belongs to
    std::vector<int> active;          // activated row indices, in activation order
    std::vector<int> basis;           // global var ids; slack k of active[k] is id nvar+k
    std::vector<char> at_upper;       // nonbasic state per global var id: 0 = at lower,
                                      // 1 = at upper, 2 = free at zero
    std::vector<double> binv;         // m x m, row-major
    std::vector<double> xval;         // current values of all variables
    int resync = 0;                   // calls since the basic values were last recomputed
};

LpWarmState::LpWarmState() : impl(new Impl) {}
LpWarmState::~LpWarmState() = default;
LpWarmState::LpWarmState(LpWarmState&&) noexcept = default;
LpWarmState& LpWarmState::operator=(LpWarmState&&) noexcept = default;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivTol = 1e-9;
constexpr int kMaxPivots = 500000;
constexpr int kStallLimit = 2000;  // Dantzig pivots without progress before Bland

bool lp_trace() {
    static bool on = std::getenv("TENTMLE_LP_TRACE") != nullptr;
    return on;
}

double lp_ms() {
    return 1e3 * (double)std::clock() / CLOCKS_PER_SEC;
}

class Simplex {
  public:
    Simplex(LpWarmState::Impl& st, const HeightIneqSystem& sys, const Vec& cost, double box,
            double feas_tol, long long max_pivots)
        : st_(st), sys_(sys), cost_(cost), box_(box), n_((int)cost.size()),
          feas_tol_(feas_tol * std::max(1.0, box)),
          budget_(max_pivots > 0 ? max_pivots : std::numeric_limits<long long>::max() / 2) {}

    LpResult run() {
        if (!reusable()) {
            reset_cold();
            rebuild_columns();
        } else {
            rebuild_columns();
            if (++st_.resync >= 256) {
                // basic values drift under long eta sequences; refresh them
                load_values();
                st_.resync = 0;
            }
        }

        LpResult res;
        // rescue ladder for numerical dead ends: 1 = refactorized the basis
        // inverse, 2 = rebuilt everything from a cold start
        int rescue_level = 0;
        auto rescue = [&](const char* why) -> bool {
            if (rescue_level < 1) {
                rescue_level = 1;
                if (lp_trace()) std::fprintf(stderr, "[lp] rescue refactorize (%s) m=%d\n", why, m());
                if (refactorize()) {
                    load_values();
                    return true;
                }
            }
            if (rescue_level < 2) {
                rescue_level = 2;
                if (lp_trace()) std::fprintf(stderr, "[lp] rescue cold restart (%s)\n", why);
                reset_cold();
                rebuild_columns();
                return true;
            }
            return false;
        };
        for (int round = 0; round < 2 + (int)sys_.rows.size(); ++round) {
            bool restart_rounds = false;
            for (int guard = 0;; ++guard) {
                if (guard > 32) {
                    if (!rescue("restoration loop"))
                        throw LpNumericalFailure("feasibility restoration loop");
                    restart_rounds = true;
                    break;
                }
                if (any_infeasible()) {
                    load_values();  // drop accumulated step error before repairing
                    if (any_infeasible()) {
                        double t0 = lp_ms();
                        int p1 = phase(true);
                        res.pivots += p1;
                        if (lp_trace())
                            std::fprintf(stderr,
                                         "[lp] round=%d guard=%d m=%d phase1 pivots=%d %.0fms\n",
                                         round, guard, m(), p1, lp_ms() - t0);
                        if (any_infeasible()) {
                            // the system always holds at y = 0, so this is numerical
                            if (!rescue("phase1 dead end"))
                                throw LpNumericalFailure("infeasible working basis");
                            restart_rounds = true;
                            break;
                        }
                    }
                }
                int before = res.pivots;
                double t0 = lp_ms();
                int p2 = phase(false);
                res.pivots += p2;
                if (lp_trace() && (p2 > 0 || guard > 0))
                    std::fprintf(stderr, "[lp] round=%d guard=%d m=%d phase2 pivots=%d %.0fms\n",
                                 round, guard, m(), p2, lp_ms() - t0);
                if (!any_infeasible()) break;
                if (res.pivots > before) continue;
                if (!rescue("stuck infeasible")) throw LpNumericalFailure("stuck infeasible basis");
                restart_rounds = true;
                break;
            }
            if (restart_rounds) {
                round = -1;
                continue;
            }
            std::vector<int> add = violated_rows();
            if (lp_trace())
                std::fprintf(stderr, "[lp] round=%d m=%d activate %zu\n", round, m(), add.size());
            if (add.empty()) break;
            activate_rows(add);
        }

        st_.valid = true;
        res.y.assign(st_.xval.begin(), st_.xval.begin() + n_);
        res.objective = 0.0;
        for (int j = 0; j < n_; ++j) res.objective += cost_[j] * res.y[j];
        res.active_rows = (int)st_.active.size();
        res.truncated = budget_ <= 0;
        return res;
    }

  private:
    int m() const { return (int)st_.active.size(); }
    double lo(int j) const { return j < n_ ? -box_ : 0.0; }
    double hi(int j) const { return j < n_ ? box_ : kInf; }
    double cst(int j) const { return j < n_ ? cost_[j] : 0.0; }

    bool reusable() const {
        return st_.valid && st_.nvar == n_ && st_.nrows == sys_.rows.size();
    }

    // Cold start at the origin, which satisfies every row with equality:
    // structurals sit nonbasic free at zero, every row is active with its
    // slack basic at zero, and the basis inverse is exactly -I.  Starting
    // feasible this way removes any cold feasibility phase.
    void reset_cold() {
        st_.valid = false;
        st_.nvar = n_;
        st_.nrows = sys_.rows.size();
        int mm = (int)sys_.rows.size();
        st_.active.resize(mm);
        st_.basis.resize(mm);
        st_.at_upper.assign(n_ + mm, 2);
        st_.xval.assign(n_ + mm, 0.0);
        for (int k = 0; k < mm; ++k) {
            st_.active[k] = k;
            st_.basis[k] = n_ + k;
            st_.at_upper[n_ + k] = 0;
        }
        st_.binv.assign((std::size_t)mm * mm, 0.0);
        for (int k = 0; k < mm; ++k) st_.binv[(std::size_t)k * mm + k] = -1.0;
        st_.resync = 0;
    }

    // column of the constraint matrix over the active rows, for structural vars
    void rebuild_columns() {
        cols_.assign(n_, {});
        for (int k = 0; k < m(); ++k)
            for (const auto& [idx, coef] : sys_.rows[st_.active[k]].terms)
                cols_[idx].push_back({k, coef});
        in_basis_.assign(n_ + m(), 0);
        for (int v : st_.basis) in_basis_[v] = 1;
    }

    // x_B = -Binv * (sum over nonbasic structural columns of A_j x_j)
    void load_values() {
        for (int j = 0; j < n_ + m(); ++j)
            if (!in_basis_[j])
                st_.xval[j] = st_.at_upper[j] == 2 ? 0.0 : (st_.at_upper[j] ? hi(j) : lo(j));
        if (m() == 0) return;
        std::vector<double> rhs(m(), 0.0);
        for (int j = 0; j < n_; ++j) {
            if (in_basis_[j] || st_.xval[j] == 0.0) continue;
            for (const auto& [k, coef] : cols_[j]) rhs[k] += coef * st_.xval[j];
        }
        // nonbasic slacks sit at 0 and contribute nothing
        for (int r = 0; r < m(); ++r) {
            double v = 0.0;
            const double* row = st_.binv.data() + (std::size_t)r * m();
            for (int k = 0; k < m(); ++k) v -= row[k] * rhs[k];
            st_.xval[st_.basis[r]] = v;
        }
    }

    bool infeasible_var(int vb) const {
        // looser than kPivTol * step so that sub-pivot-tolerance drift from a
        // full bound flip cannot flag a basic as out of range
        double v = st_.xval[vb];
        double t = 2e-7 * std::max(1.0, box_);
        return v < lo(vb) - t || v > hi(vb) + t;
    }
    bool any_infeasible() const {
        for (int r = 0; r < m(); ++r)
            if (infeasible_var(st_.basis[r])) return true;
        return false;
    }

    // u = Binv * (column of the entering variable); the column is sparse
    void ftran(int enter, std::vector<double>& u) const {
        u.assign(m(), 0.0);
        if (enter < n_) {
            const auto& col = cols_[enter];
            for (int r = 0; r < m(); ++r) {
                const double* row = st_.binv.data() + (std::size_t)r * m();
                double acc = 0.0;
                for (const auto& [k, coef] : col) acc += row[k] * coef;
                u[r] = acc;
            }
        } else {
            int k = enter - n_;
            for (int r = 0; r < m(); ++r) u[r] = -st_.binv[(std::size_t)r * m() + k];
        }
    }

    // pi = cB . Binv, then d_j = c_j - pi . A_j over every column
    void full_price(bool phase1, const std::vector<char>& infeas, std::vector<double>& pi,
                    std::vector<double>& dvec) const {
        std::fill(pi.begin(), pi.end(), 0.0);
        for (int r = 0; r < m(); ++r) {
            double cb;
            if (phase1) {
                if (!infeas[r]) continue;
                cb = (st_.xval[st_.basis[r]] < lo(st_.basis[r])) ? -1.0 : 1.0;
            } else {
                cb = cst(st_.basis[r]);
                if (cb == 0.0) continue;
            }
            const double* row = st_.binv.data() + (std::size_t)r * m();
            for (int k = 0; k < m(); ++k) pi[k] += cb * row[k];
        }
        std::fill(dvec.begin(), dvec.end(), 0.0);
        for (int k = 0; k < m(); ++k) {
            if (pi[k] == 0.0) continue;
            for (const auto& [idx, coef] : sys_.rows[st_.active[k]].terms)
                dvec[idx] += pi[k] * coef;
            dvec[n_ + k] -= pi[k];  // slack column is -e_k
        }
        for (int j = 0; j < n_ + m(); ++j) dvec[j] = (phase1 ? 0.0 : cst(j)) - dvec[j];
    }

    // One simplex phase.  phase1 minimizes the total out-of-range mass of the
    // basics and returns as soon as everyone is back inside their bounds; its
    // pricing is recomputed per pivot because the composite objective changes
    // whenever a basic crosses a bound.  phase2 minimizes the true objective
    // with devex pricing and incremental reduced costs, and returns if
    // numerics knock a basic out of range (the caller restores feasibility)
    // or the pivot budget runs out.
    int phase(bool phase1) {
        int pivots = 0;
        bool bland = false;
        int stall = 0;
        double best_obj = kInf;
        std::vector<double> pi(m()), dvec(n_ + m()), u, binvr, alpha;
        std::vector<double> dw;  // devex reference weights
        std::vector<char> infeas(m());
        bool need_price = true;
        int since_price = 0;

        for (;; ++pivots) {
            if (pivots > kMaxPivots) throw LpNumericalFailure("pivot limit exceeded");

            bool any_bad = false;
            for (int r = 0; r < m(); ++r) {
                infeas[r] = infeasible_var(st_.basis[r]) ? 1 : 0;
                any_bad |= infeas[r] != 0;
            }
            if (phase1 && !any_bad) return pivots;
            if (!phase1 && any_bad) return pivots;
            if (!phase1 && budget_ <= 0) return pivots;

            // entering variable: Dantzig in phase1, devex in phase2, Bland
            // once stalled; a phase2 optimum found on stale incremental
            // prices is verified against a fresh pricing pass
            const double dtol = 1e-9 * std::max(1.0, box_);
            int enter = -1;
            for (;;) {
                bool priced_now = phase1 || need_price || bland || since_price >= 256;
                if (priced_now) {
                    full_price(phase1, infeas, pi, dvec);
                    if (!phase1) dw.assign(n_ + m(), 1.0);
                    since_price = 0;
                    need_price = false;
                }
                enter = -1;
                double score = 0.0;
                for (int j = 0; j < n_ + m(); ++j) {
                    if (in_basis_[j]) continue;
                    double d = dvec[j];
                    char side = st_.at_upper[j];
                    bool improving = side == 2   ? (std::fabs(d) > dtol)
                                     : side == 1 ? (d > dtol)
                                                 : (d < -dtol);
                    if (!improving) continue;
                    if (bland) {
                        enter = j;
                        break;
                    }
                    double s = phase1 ? std::fabs(d) : d * d / dw[j];
                    if (enter < 0 || s > score) {
                        score = s;
                        enter = j;
                    }
                }
                if (enter >= 0 || priced_now) break;
                need_price = true;  // stale optimum: re-verify
            }
            if (enter < 0) return pivots;  // optimal for this phase

            double sigma = st_.at_upper[enter] == 2 ? (dvec[enter] < 0.0 ? 1.0 : -1.0)
                           : st_.at_upper[enter]    ? -1.0
                                                    : 1.0;
            ftran(enter, u);

            // ratio test; basic r moves at rate rho = -sigma * u_r
            // own bound: a free-at-zero var reaches a box face after box_,
            // a bound-nonbasic one flips across the whole box
            double limit = st_.at_upper[enter] == 2
                               ? (sigma > 0 ? hi(enter) : -lo(enter))
                               : hi(enter) - lo(enter);
            int leave = -1;
            double leave_piv = 0.0;
            bool leave_at_upper = false;
            for (int r = 0; r < m(); ++r) {
                if (std::fabs(u[r]) < kPivTol) continue;
                int vb = st_.basis[r];
                double rho = -sigma * u[r];
                double x = st_.xval[vb];
                double step;
                bool side_hi;
                if (rho > 0) {
                    if (x >= hi(vb)) {
                        // at or past the cap: flagged phase-1 basics may keep
                        // rising (priced), anything else blocks in place
                        if (hi(vb) == kInf || (phase1 && infeas[r])) continue;
                        step = 0.0;
                        side_hi = true;
                    } else {
                        double target = (phase1 && infeas[r] && x < lo(vb)) ? lo(vb) : hi(vb);
                        if (target == kInf) continue;
                        step = (target - x) / rho;
                        side_hi = (target == hi(vb));
                    }
                } else {
                    if (x < lo(vb) && phase1 && infeas[r]) continue;  // sunk; pricing covers it
                    double target = (x > hi(vb)) ? hi(vb) : lo(vb);
                    step = (x - target) / (-rho);
                    side_hi = (target == hi(vb));
                }
                if (step < 0) step = 0;
                bool better;
                if (leave < 0)
                    better = step < limit - 1e-12;
                else if (bland)
                    better = step < limit - 1e-12 ||
                             (step <= limit + 1e-12 && vb < st_.basis[leave]);
                else
                    better = step < limit - 1e-12 ||
                             (step <= limit + 1e-12 && std::fabs(u[r]) > std::fabs(leave_piv));
                if (better) {
                    limit = step;
                    leave = r;
                    leave_piv = u[r];
                    leave_at_upper = side_hi;
                }
            }

            if (limit == kInf || limit > 1e14)
                throw LpNumericalFailure("unbounded direction in the oracle");

            if (limit > 0) {
                for (int r = 0; r < m(); ++r) st_.xval[st_.basis[r]] -= sigma * limit * u[r];
                st_.xval[enter] += sigma * limit;
            }
            if (leave < 0) {
                // bound flip (or a free var landing on a box face): basis and
                // prices unchanged
                st_.at_upper[enter] =
                    st_.at_upper[enter] == 2 ? (sigma > 0 ? 1 : 0) : (st_.at_upper[enter] ^ 1);
            } else {
                int out = st_.basis[leave];
                if (!phase1 && !bland) {
                    // pivot row of the tableau updates reduced costs and devex
                    // weights in O(nnz + m) instead of a fresh O(m^2) pricing
                    binvr.assign(st_.binv.begin() + (std::size_t)leave * m(),
                                 st_.binv.begin() + (std::size_t)(leave + 1) * m());
                    alpha.assign(n_ + m(), 0.0);
                    for (int k = 0; k < m(); ++k) {
                        if (binvr[k] == 0.0) continue;
                        for (const auto& [idx, coef] : sys_.rows[st_.active[k]].terms)
                            alpha[idx] += binvr[k] * coef;
                        alpha[n_ + k] -= binvr[k];
                    }
                    double piv = u[leave];
                    double ratio = dvec[enter] / piv;
                    double we = dw[enter];
                    for (int j = 0; j < n_ + m(); ++j) {
                        if (in_basis_[j] || j == enter) continue;
                        dvec[j] -= ratio * alpha[j];
                        double cand = (alpha[j] / piv) * (alpha[j] / piv) * we;
                        if (cand > dw[j]) dw[j] = cand;
                    }
                    dvec[out] = -ratio;
                    dvec[enter] = 0.0;
                    dw[out] = std::max(we / (piv * piv), 1.0);
                    ++since_price;
                }
                st_.xval[out] = leave_at_upper ? hi(out) : lo(out);
                st_.at_upper[out] = leave_at_upper ? 1 : 0;
                in_basis_[out] = 0;
                in_basis_[enter] = 1;
                st_.basis[leave] = enter;
                update_binv(leave, u);
            }
            if (!phase1) --budget_;

            if (!bland) {
                double obj = 0.0;
                if (phase1) {
                    for (int r = 0; r < m(); ++r) {
                        double x = st_.xval[st_.basis[r]];
                        double l = lo(st_.basis[r]), h = hi(st_.basis[r]);
                        if (x < l) obj += l - x;
                        if (x > h) obj += x - h;
                    }
                } else {
                    for (int j = 0; j < n_; ++j) obj += cost_[j] * st_.xval[j];
                }
                if (obj < best_obj - 1e-13 * std::max(1.0, std::fabs(best_obj))) {
                    best_obj = obj;
                    stall = 0;
                } else if (++stall > kStallLimit) {
                    bland = true;
                    need_price = true;
                }
            }
        }
    }

    // Rebuild the basis inverse from scratch (Gauss-Jordan with partial
    // pivoting), clearing accumulated eta-update error.  False if singular.
    bool refactorize() {
        int mm = m();
        if (mm == 0) return true;
        std::vector<double> B((std::size_t)mm * mm, 0.0), inv((std::size_t)mm * mm, 0.0);
        for (int r = 0; r < mm; ++r) inv[(std::size_t)r * mm + r] = 1.0;
        for (int c = 0; c < mm; ++c) {
            int vb = st_.basis[c];
            if (vb >= n_) {
                B[(std::size_t)(vb - n_) * mm + c] = -1.0;
            } else {
                for (const auto& [k, coef] : cols_[vb]) B[(std::size_t)k * mm + c] = coef;
            }
        }
        for (int col = 0; col < mm; ++col) {
            int piv = -1;
            double best = kPivTol;
            for (int r = col; r < mm; ++r) {
                double a = std::fabs(B[(std::size_t)r * mm + col]);
                if (a > best) {
                    best = a;
                    piv = r;
                }
            }
            if (piv < 0) return false;
            if (piv != col) {
                for (int k = 0; k < mm; ++k) {
                    std::swap(B[(std::size_t)piv * mm + k], B[(std::size_t)col * mm + k]);
                    std::swap(inv[(std::size_t)piv * mm + k], inv[(std::size_t)col * mm + k]);
                }
            }
            double d = B[(std::size_t)col * mm + col];
            for (int k = 0; k < mm; ++k) {
                B[(std::size_t)col * mm + k] /= d;
                inv[(std::size_t)col * mm + k] /= d;
            }
            for (int r = 0; r < mm; ++r) {
                if (r == col) continue;
                double f = B[(std::size_t)r * mm + col];
                if (f == 0.0) continue;
                for (int k = 0; k < mm; ++k) {
                    B[(std::size_t)r * mm + k] -= f * B[(std::size_t)col * mm + k];
                    inv[(std::size_t)r * mm + k] -= f * inv[(std::size_t)col * mm + k];
                }
            }
        }
        st_.binv = std::move(inv);
        return true;
    }

    // eta update: row(leave) /= pivot; row(i) -= u_i * row(leave)
    void update_binv(int leave, const std::vector<double>& u) {
        double piv = u[leave];
        if (std::fabs(piv) < kPivTol) throw LpNumericalFailure("vanishing pivot");
        double* prow = st_.binv.data() + (std::size_t)leave * m();
        for (int k = 0; k < m(); ++k) prow[k] /= piv;
        for (int r = 0; r < m(); ++r) {
            if (r == leave || u[r] == 0.0) continue;
            double f = u[r];
            double* row = st_.binv.data() + (std::size_t)r * m();
            for (int k = 0; k < m(); ++k) row[k] -= f * prow[k];
        }
    }

    std::vector<int> violated_rows() const {
        std::vector<char> act(sys_.rows.size(), 0);
        for (int r : st_.active) act[r] = 1;
        std::vector<std::pair<double, int>> bad;
        for (std::size_t t = 0; t < sys_.rows.size(); ++t) {
            if (act[t]) continue;
            double v = 0.0;
            for (const auto& [idx, coef] : sys_.rows[t].terms) v += coef * st_.xval[idx];
            if (v < -feas_tol_) bad.push_back({v, (int)t});
        }
        std::sort(bad.begin(), bad.end());
        std::vector<int> out;
        for (std::size_t k = 0; k < bad.size() && k < 1024; ++k) out.push_back(bad[k].second);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Append rows with their slacks basic at the current row values.  The new
    // slack columns live only in the new rows, so the inverse extends exactly
    // in one block as [[Binv, 0], [R.Binv, -I]].
    void activate_rows(const std::vector<int>& add) {
        int old_m = m();
        int k = (int)add.size();
        int new_m = old_m + k;
        std::vector<double> nb((std::size_t)new_m * new_m, 0.0);
        for (int r = 0; r < old_m; ++r) {
            const double* src = st_.binv.data() + (std::size_t)r * old_m;
            std::copy(src, src + old_m, nb.data() + (std::size_t)r * new_m);
        }
        std::vector<int> slot(n_, -1);  // basis slot of each structural var
        for (int r = 0; r < old_m; ++r)
            if (st_.basis[r] < n_) slot[st_.basis[r]] = r;
        for (int i = 0; i < k; ++i) {
            double* dst = nb.data() + (std::size_t)(old_m + i) * new_m;
            for (const auto& [idx, coef] : sys_.rows[add[i]].terms) {
                int r = slot[idx];
                if (r < 0) continue;  // nonbasic structural: no inverse contribution
                const double* brow = st_.binv.data() + (std::size_t)r * old_m;
                for (int c = 0; c < old_m; ++c) dst[c] += coef * brow[c];
            }
            dst[old_m + i] = -1.0;
        }
        st_.binv = std::move(nb);

        for (int i = 0; i < k; ++i) {
            double v = 0.0;
            for (const auto& [idx, coef] : sys_.rows[add[i]].terms) v += coef * st_.xval[idx];
            st_.active.push_back(add[i]);
            st_.basis.push_back(n_ + old_m + i);
            st_.at_upper.push_back(0);
            st_.xval.push_back(v);
        }
        rebuild_columns();
    }

    LpWarmState::Impl& st_;
    const HeightIneqSystem& sys_;
    const Vec& cost_;
    double box_;
    int n_;
    double feas_tol_;
    long long budget_;

    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<char> in_basis_;
};

}  // namespace

LpResult lp_minimize(const HeightIneqSystem& system, const Vec& cost, double box,
                     LpWarmState* warm, double feas_tol, long long max_pivots) {
    if (!(box > 0.0) || !std::isfinite(box)) throw Error("box bound must be positive");
    if (cost.empty()) throw Error("empty cost vector");
    for (double c : cost)
        if (!std::isfinite(c)) throw Error("non-finite cost");
    if (system.n != 0 && system.n != (int)cost.size())
        throw Error("cost size does not match the constraint system");
    for (const auto& row : system.rows)
        for (const auto& [idx, coef] : row.terms) {
            if (idx < 0 || idx >= (int)cost.size()) throw Error("row index out of range");
            if (!std::isfinite(coef)) throw Error("non-finite row coefficient");
        }

    if (system.rows.empty()) {
        // box-only oracle is a sign map
        LpResult res;
        res.y.resize(cost.size());
        for (std::size_t j = 0; j < cost.size(); ++j) {
            res.y[j] = (cost[j] > 0.0) ? -box : box;
            res.objective += cost[j] * res.y[j];
        }
        return res;
    }

    // normalize extreme cost scales so the pricing tolerances stay meaningful
    double scale = 0.0;
    for (double c : cost) scale = std::max(scale, std::fabs(c));
    Vec scaled;
    const Vec* use = &cost;
    if (scale > 0.0 && (scale > 1e3 || scale < 1e-3)) {
        scaled = cost;
        for (double& c : scaled) c /= scale;
        use = &scaled;
    } else {
        scale = 1.0;
    }

    LpWarmState local;
    LpWarmState::Impl& impl = warm ? *warm->impl : *local.impl;
    Simplex s(impl, system, *use, box, feas_tol, max_pivots);
    LpResult res = s.run();
    res.objective *= scale;
    return res;
}

}  // namespace tentmle
