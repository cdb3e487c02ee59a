#pragma once

#include "tentmle/constraints.hpp"
#include "tentmle/subdivision.hpp"
#include "tentmle/types.hpp"

namespace tentmle {

// Divided difference of exp over the given nodes (any order, repeats allowed).
// Table recursion with a series fallback on clusters of nearly equal nodes.
double exp_divided_difference(const double* nodes, int count);

// Exact integral of exp over an affine interpolant on a simplex:
//   integral = |det(edges)| * exp[h_0, ..., h_d]
// where exp[...] is the divided difference over the vertex heights.
// With grad != nullptr also fills d/dh_i = |det| * exp[h_0,...,h_d,h_i].
double simplex_exp_integral(const std::vector<Vec>& vertices, const Vec& heights,
                            Vec* grad = nullptr);

// Integral of exp(tent) over conv(X); per-simplex terms are accumulated in
// sorted simplex order so the result is independent of thread count.
double integral_exp_tent(const PointConfig& X, const TentSubdivision& T, const Vec& heights,
                         bool parallel = true);

// sigma(y) = -w.y + integral exp(tent(y)), with a subgradient: the integral
// part differentiates through the (perturbation-selected) triangulation;
// non-tight coordinates get exactly -w_i.
struct ObjectiveValue {
    double sigma = 0.0;
    double integral = 0.0;
    Vec subgrad;
};
ObjectiveValue objective_and_subgradient(const PointConfig& X, const WeightVector& w,
                                         const Vec& y, const TentSubdivision& T,
                                         bool parallel = true);

}  // namespace tentmle
