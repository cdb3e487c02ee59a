#pragma once

#include <string>

#include "tentmle/solver.hpp"

namespace tentmle {

enum class Model { logconcave, mtp2, llc };

std::string model_name(Model m);

struct EstimateSettings {
    SolverSettings solver;
    int round_decimals = 1;      // llc only: samples are rounded first
    bool mtp2_general = false;   // d >= 3 expert mode: pairwise constraint system
    bool renormalize = true;     // shift heights so the integral is exactly one
};

struct EstimateResult {
    Model model = Model::logconcave;
    PointConfig config;          // original samples first, closure points after
    WeightVector weights;
    Vec heights;
    TentSubdivision tent;
    SolverRun run;
    double integral = 0.0;
    double loglik = 0.0;         // sum_i w_i * heights_i
    bool supermodular_ok = false;
    bool lnatural_ok = false;
    Polytope support;            // hrep (+ vertices for d <= 3)
};

// Unconstrained tent-function density estimate (log-concave MLE).
EstimateResult mle_logconcave(const PointConfig& X, const WeightVector& w,
                              const EstimateSettings& s = {});

// 2-D estimate under log-concavity + log-supermodularity: grid closure,
// zero-padded weights, grid square constraints.
EstimateResult mle_mtp2_2d(const PointConfig& X, const WeightVector& w,
                           const EstimateSettings& s = {});

// Any-d estimate over an exact min-max closure with the pairwise constraint
// system (no tidiness certificate for d >= 3; flagged by the caller).
EstimateResult mle_mtp2_general(const PointConfig& X, const WeightVector& w,
                                const EstimateSettings& s = {});

// Log-L-natural-concave estimate: round, merge duplicates, extend to the
// discrete lattice closure, local difference constraints.
EstimateResult mle_llc(const PointConfig& X, const WeightVector& w,
                       const EstimateSettings& s = {});

// Candidate subdivision search for non-tidy min-max closed configurations:
// slice conv(X) by the hyperplanes of the log-concave MLE's bimonotone
// interior walls, then re-solve over heights whose tent coarsens the sliced
// subdivision (original weights on X, zero on the added slice vertices).
struct CandidateResult {
    PointConfig xprime;
    TentSubdivision refined;      // the sliced subdivision (cells = slice regions)
    EstimateResult estimate;      // over xprime (equals the MLE when already bimonotone)
    bool already_bimonotone = false;
    HeightIneqSystem system;      // affine-on-cells + concave folds across walls
};
CandidateResult candidate_bimonotone(const PointConfig& X, const WeightVector& w,
                                     const EstimateSettings& s = {});

}  // namespace tentmle
