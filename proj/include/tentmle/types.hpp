#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tentmle {

using Vec = std::vector<double>;

// Errors thrown by the geometry / solver layers.  The CLI maps them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSupport : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};
struct IrrationalInput : Error {
    using Error::Error;
};
struct MissingLatticePoint : Error {
    using Error::Error;
};
struct NotLNaturalClosed : Error {
    using Error::Error;
};
struct DegenerateSimplex : Error {
    using Error::Error;
};
struct DegenerateHull : Error {
    using Error::Error;
};
struct LpNumericalFailure : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// A finite point configuration in R^d.  The first `origin_count` points are the
// original samples; anything after them was added by a closure / extension step.
struct PointConfig {
    int dim = 0;
    std::vector<Vec> pts;
    std::size_t origin_count = 0;
    // Set when the points live on (1/lattice_scale) * Z^d, e.g. after rounding.
    std::optional<long long> lattice_scale;

    std::size_t size() const { return pts.size(); }
    const Vec& operator[](std::size_t i) const { return pts[i]; }
};

// Nonnegative weights summing to one, zero-padded over added points.
struct WeightVector {
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
    double operator[](std::size_t i) const { return w[i]; }
};

WeightVector uniform_weights(std::size_t n);
// Normalizes to sum one; throws on negative entries or zero total mass.
WeightVector normalize_weights(std::vector<double> raw);
// Extends weights with zeros so they cover a closure of size n.
WeightVector pad_weights(const WeightVector& w, std::size_t n);

inline bool leq_componentwise(const Vec& a, const Vec& b) {
    for (std::size_t c = 0; c < a.size(); ++c)
        if (a[c] > b[c]) return false;
    return true;
}
inline Vec meet(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) r[c] = a[c] < b[c] ? a[c] : b[c];
    return r;
}
inline Vec join(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) r[c] = a[c] > b[c] ? a[c] : b[c];
    return r;
}

}  // namespace tentmle
