#pragma once

#include <memory>

#include "tentmle/constraints.hpp"
#include "tentmle/types.hpp"

namespace tentmle {

// Linear minimization over {y : rows(y) >= 0, -box <= y_i <= box}.
//
// Bounded-variable simplex with lazy row activation: rows enter the working
// set only when the current vertex violates them, so the dense basis stays
// small even for systems with thousands of rows.  Dantzig pricing with a
// Bland's-rule fallback guards against cycling.  The warm-start state reuses
// the previous basis across calls with the same system (only the objective
// changes inside Frank-Wolfe), which makes repeated calls cheap.
class LpWarmState;

struct LpResult {
    Vec y;
    double objective = 0.0;
    int pivots = 0;
    int active_rows = 0;
    // optimization stopped at the pivot budget: y is feasible for every row
    // (violated rows are still activated and repaired) but may be suboptimal
    bool truncated = false;
};

// max_pivots, when positive, soft-caps the optimization effort per call;
// feasibility is always driven to completion regardless.
LpResult lp_minimize(const HeightIneqSystem& system, const Vec& cost, double box,
                     LpWarmState* warm = nullptr, double feas_tol = 1e-9,
                     long long max_pivots = 0);

class LpWarmState {
  public:
    LpWarmState();
    ~LpWarmState();
    LpWarmState(LpWarmState&&) noexcept;
    LpWarmState& operator=(LpWarmState&&) noexcept;

    struct Impl;
    std::unique_ptr<Impl> impl;
};

}  // namespace tentmle
