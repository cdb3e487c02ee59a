#include "tentmle/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tentmle/subdivision.hpp"

namespace tentmle {

SolverRun frank_wolfe(const PointConfig& X, const WeightVector& w,
                      const HeightIneqSystem& system, const SolverSettings& settings,
                      const std::function<void(int, const SolverRun&)>& progress) {
    const std::size_t n = X.pts.size();
    if (w.w.size() != n) throw Error("weight vector size mismatch");
    if (settings.iters < 1) throw Error("iteration budget must be positive");
    if (!(settings.box > 0.0)) throw Error("box bound must be positive");
    if (system.n != 0 && system.n != (int)n) throw Error("constraint system size mismatch");

    SolverRun run;
    const int stride = settings.trace_stride > 0
                           ? settings.trace_stride
                           : std::max(1, settings.iters / 1000);

    // Start from the uniform density's log-height: rows vanish on constant
    // vectors, so this is feasible for any system.
    double c0;
    {
        TentSubdivision flat = build_tent(X, Vec(n, 0.0));
        c0 = -std::log(flat.domain_volume);
    }
    c0 = std::clamp(c0, -settings.box, settings.box);
    Vec y(n, c0);

    LpWarmState warm;
    double best_obj = std::numeric_limits<double>::infinity();
    double best_gap = std::numeric_limits<double>::infinity();
    int since_gap_improved = 0;

    TentSubdivision T = build_tent(X, y);
    Vec trial(n);

    for (int k = 1; k <= settings.iters; ++k) {
        ObjectiveValue ov = objective_and_subgradient(X, w, y, T, settings.parallel);

        bool improved_obj = ov.sigma < best_obj;
        if (improved_obj) {
            best_obj = ov.sigma;
            run.y = y;
            run.objective = ov.sigma;
            run.integral = ov.integral;
        }

        // soft pivot cap keeps a single oracle call from dominating the run;
        // a truncated answer is still feasible, only possibly suboptimal
        LpResult lmo = lp_minimize(system, ov.subgrad, settings.box, &warm, 1e-9, 5000);
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) gap += ov.subgrad[i] * (y[i] - lmo.y[i]);
        run.gap = gap;
        run.iterations = k;

        if (gap < best_gap * (1.0 - 1e-6) || improved_obj) {
            best_gap = std::min(best_gap, gap);
            since_gap_improved = 0;
        } else if (++since_gap_improved >= 500) {
            run.gap_stalled = true;
        }

        if (k % stride == 0 || k == 1 || k == settings.iters) {
            run.trace.push_back({k, ov.sigma, gap});
            if (progress) progress(k, run);
        }

        if (gap <= settings.tol && !lmo.truncated) {
            run.converged = true;
            break;
        }

        // Backtracking step, capped at the classic 2/(k+1) schedule.  The
        // objective's curvature scales with exp(box), so blind steps toward a
        // box vertex can balloon the integral; halving until the Armijo test
        // holds keeps sigma essentially monotone and the iterates tame.  Once
        // a step passes the test, keep halving while the trial value still
        // improves so the step lands near the one-dimensional minimum.
        double gamma = 2.0 / (double)(k + 1);
        // At a degenerate height vector (the flat start, or a tent touching
        // many points) the subdivision-based subgradient can over-promise
        // descent and the oracle direction genuinely ascends.  In that case
        // take the largest trial whose ascent stays within a decaying budget:
        // it moves the iterate to a different subdivision cell, where the
        // next subgradient is honest, at a bounded one-off cost.
        const double esc_budget = 0.02 * std::min(1.0, 100.0 / (double)k);
        bool have_acc = false, have_esc = false;
        double acc_sig = 0.0, esc_sig = 0.0;
        Vec acc_y, esc_y;
        TentSubdivision acc_T, esc_T;
        for (int half = 0; half < 44; ++half) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = (1.0 - gamma) * y[i] + gamma * lmo.y[i];
                trial[i] = std::clamp(trial[i], -settings.box, settings.box);
            }
            bool rose = false;
            try {
                TentSubdivision Tt = build_tent(X, trial);
                double sig = integral_exp_tent(X, Tt, trial, settings.parallel);
                for (std::size_t i = 0; i < n; ++i) sig -= w.w[i] * trial[i];
                if (sig <= ov.sigma - 1e-4 * gamma * gap) {
                    if (!have_acc || sig < acc_sig) {
                        have_acc = true;
                        acc_sig = sig;
                        acc_y = trial;
                        acc_T = std::move(Tt);
                    } else {
                        rose = true;  // past the minimum along the segment
                    }
                } else if (have_acc) {
                    rose = true;
                } else if (!have_esc && sig <= ov.sigma + esc_budget) {
                    have_esc = true;
                    esc_sig = sig;
                    esc_y = trial;
                    esc_T = std::move(Tt);
                }
            } catch (const Error&) {
                // an ill-conditioned mix; shrink like a failed Armijo test
            }
            if (rose) break;
            gamma *= 0.5;
        }
        if (have_acc) {
            y = std::move(acc_y);
            T = std::move(acc_T);
        } else if (have_esc) {
            y = std::move(esc_y);
            T = std::move(esc_T);
        } else {
            run.gap_stalled = true;
            break;  // ascent at every step size and no affordable escape
        }
        if (run.gap_stalled) break;  // 500 steps without gap or objective progress
    }

    if (run.y.empty()) run.y = y;  // never improved over +inf: degenerate but defined
    return run;
}

}  // namespace tentmle
