#pragma once

#include "tentmle/geometry.hpp"
#include "tentmle/types.hpp"

namespace tentmle {

// Affine function a.x + b on R^d.
struct AffineFn {
    Vec a;
    double b = 0.0;

    double operator()(const Vec& x) const {
        double s = b;
        for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * x[c];
        return s;
    }
};

// Maximal linearity region of a tent function.
struct Cell {
    std::vector<int> points;    // config points lying on the cell (tight), extreme ones
    std::vector<int> simplices; // triangulation simplices covering the cell
    AffineFn fn;
};

// Interior codimension-one face between two cells.
struct Wall {
    int cell_a = -1, cell_b = -1;
    std::vector<int> points;  // config points spanning the wall
    Vec normal;               // unit normal of the wall's hyperplane
    double offset = 0.0;      // normal.x = offset on the wall
    bool bimonotone = false;
};

struct TentSubdivision {
    int dim = 0;
    std::vector<std::vector<int>> simplices;  // d+1 vertex indices each, canonical order
    std::vector<std::vector<int>> simplex_nbr;  // neighbor across the face opposite vertex k, -1 = boundary
    std::vector<int> simplex_cell;
    std::vector<Cell> cells;
    std::vector<Wall> walls;
    std::vector<double> hull_value;  // tent value at every config point
    std::vector<double> height_gap;  // hull_value - height, >= 0 up to noise
    std::vector<char> tight;         // height_gap within tolerance at build time
    double domain_volume = 0.0;
};

// Piecewise-linear concave majorant of the heights: upper convex hull of the
// lifted points, triangulated, with coplanar neighbours merged back into cells
// (affine agreement within 1e-9, so the reported cells do not depend on the
// internal tie-breaking perturbation).
TentSubdivision build_tent(const PointConfig& X, const Vec& heights);

// Tent value at an arbitrary point; -inf outside conv(X).
double eval_tent(const PointConfig& X, const TentSubdivision& T, const Vec& x);

// Simplex containing x (boundary-inclusive), or -1 when x is outside conv(X).
// Optionally reports barycentric coordinates w.r.t. that simplex's vertices.
int locate_simplex(const PointConfig& X, const TentSubdivision& T, const Vec& x,
                   Vec* bary = nullptr);

bool is_tight(const TentSubdivision& T, int point_index, double tol = 1e-9);

// True iff every wall's hyperplane is bimonotone.  Offending wall indices out.
bool is_supermodular_tent(const TentSubdivision& T, std::vector<int>* offending = nullptr);

// True iff every cell is cut out by inequalities of type y_i - y_j <= c or
// l <= y_i <= u only (difference/box form).  Offending cell indices out.
bool is_lnatural_tent(const PointConfig& X, const TentSubdivision& T,
                      std::vector<int>* offending = nullptr);

}  // namespace tentmle
