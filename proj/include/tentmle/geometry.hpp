#pragma once

#include "tentmle/types.hpp"

namespace tentmle {

// One inequality a.z >= b.  Rows produced by the geometry layer are bimonotone:
// at most two nonzero coefficients whose product is <= 0.
struct LinearIneq {
    Vec a;
    double b = 0.0;
};

bool is_bimonotone_hyperplane(const Vec& normal, double tol = 1e-9);

struct Polytope {
    int dim = 0;
    std::vector<LinearIneq> hrep;
    std::vector<Vec> vrep;  // filled for dim <= 3

    bool contains(const Vec& z, double tol = 1e-9) const;
};

// Grid index table for 2-D closures: flattened row-major over the coordinate
// grid, entry 0 = grid cell absent from the configuration, otherwise 1-based
// index into the config's point list.
struct IndexTable {
    std::vector<double> xs, ys;  // sorted distinct coordinate values
    std::vector<int> cell;       // size xs.size()*ys.size()

    int at(std::size_t i, std::size_t j) const { return cell[i * ys.size() + j]; }
    int& at(std::size_t i, std::size_t j) { return cell[i * ys.size() + j]; }
};

// Smallest superset of X closed under pairwise min and max (coordinatewise).
// Input points come first in the output, added points follow in sorted order.
PointConfig minmax_closure_exact(const PointConfig& X, std::size_t max_size = 5'000'000);

// 2-D closure used by the density pipeline: grid(X) restricted to
// conv(X ∪ {min(X), max(X)}).  Also returns the occupancy table.
struct Grid2dClosure {
    PointConfig config;
    IndexTable table;
};
Grid2dClosure minmax_closure_grid2d(const PointConfig& X);

// Inequality description (plus vertices for d <= 3) of the min-max convex hull:
// for every coordinate pair, the planar hull of the projected points together
// with min(X) and max(X) contributes its bimonotone edges.
Polytope mmconv(const PointConfig& X);

// The polytope {y : y_i - y_j <= max_{x in X}(x_i - x_j), min_i <= y_i <= max_i}.
Polytope l_extension_polytope(const PointConfig& X);

// Scales X to the integer lattice (minimal m with m*X in Z^d, denominators
// up to 1e6), enumerates the lattice points of the scaled difference-bound
// polytope and rescales.  Output contains X as a prefix; lattice_scale = m.
PointConfig discrete_l_extension(const PointConfig& X, std::size_t max_points = 2'000'000);

// Vertex enumeration for small dimensions (d <= 3) from an H-representation.
std::vector<Vec> enumerate_vertices(const std::vector<LinearIneq>& hrep, int dim,
                                    double tol = 1e-9);

bool is_minmax_closed(const PointConfig& X);

}  // namespace tentmle
