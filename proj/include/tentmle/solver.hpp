#pragma once

#include <functional>

#include "tentmle/lp.hpp"
#include "tentmle/objective.hpp"

namespace tentmle {

struct SolverSettings {
    int iters = 20'000;
    double box = 50.0;
    double tol = 1e-4;     // stop when the duality gap drops below this
    int trace_stride = 0;  // 0 = auto (about 1000 trace rows)
    bool parallel = true;
};

struct TracePoint {
    int iter = 0;
    double objective = 0.0;
    double gap = 0.0;
};

struct SolverRun {
    Vec y;                  // best iterate by objective
    double objective = 0.0;
    double integral = 0.0;
    double gap = 0.0;       // last computed duality gap
    int iterations = 0;
    bool converged = false;         // gap <= tol reached
    bool gap_stalled = false;       // gap failed to improve over 500 steps
    std::vector<TracePoint> trace;
};

// Conditional-gradient loop for  min -w.y + integral exp(tent(y))  over the
// constraint cone intersected with [-box, box]^n.  Starts from the constant
// vector -log vol(conv X); step k moves toward the linear minimizer with a
// backtracking step capped at 2/(k+1); the gap g.(y - s) certifies
// suboptimality.
SolverRun frank_wolfe(const PointConfig& X, const WeightVector& w,
                      const HeightIneqSystem& system, const SolverSettings& settings = {},
                      const std::function<void(int, const SolverRun&)>& progress = nullptr);

}  // namespace tentmle
