#pragma once

#include "tentmle/geometry.hpp"
#include "tentmle/types.hpp"

namespace tentmle {

// Sparse homogeneous row  sum_k coef_k * y[idx_k] >= 0.
struct HeightIneq {
    std::vector<std::pair<int, double>> terms;  // sorted by index, coefficients summed

    double value(const Vec& y) const {
        double s = 0.0;
        for (auto& [i, c] : terms) s += c * y[i];
        return s;
    }
};

enum class IneqKind { supermodular, lnatural, mixed };

struct HeightIneqSystem {
    IneqKind kind = IneqKind::supermodular;
    int n = 0;  // number of height variables
    std::vector<HeightIneq> rows;
};

// One row per complete unit square of the occupancy table:
//   y[i,j] + y[i+1,j+1] - y[i+1,j] - y[i,j+1] >= 0.
HeightIneqSystem supermodular_constraints_2d(const IndexTable& table, int n);

// One row per incomparable pair whose meet and join are both present
// (requires a min-max closed configuration; exact coordinate matching).
HeightIneqSystem supermodular_constraints_general(const PointConfig& X);

// Local difference rows on a scaled-lattice configuration: with e0 = -sum e_i,
// for x in X and 0 <= i < j <= d with x+e_i, x+e_j, x+e_i+e_j in X emit
//   y(x) + y(x+e_i+e_j) - y(x+e_i) - y(x+e_j) >= 0   (coinciding indices summed).
HeightIneqSystem lnatural_constraints(const PointConfig& X);

// Most negative row value (0 for an empty system) and the offending row.
struct HeightCheck {
    bool feasible = true;
    double worst = 0.0;
    int row = -1;
};
HeightCheck check_heights(const HeightIneqSystem& S, const Vec& y, double tol = 1e-9);

}  // namespace tentmle
