#include "tentmle/types.hpp"

#include <cmath>
#include <numeric>

namespace tentmle {

WeightVector uniform_weights(std::size_t n) {
    WeightVector w;
    w.w.assign(n, n ? 1.0 / static_cast<double>(n) : 0.0);
    return w;
}

WeightVector normalize_weights(std::vector<double> raw) {
    double total = 0.0;
    for (double v : raw) {
        if (v < 0.0) throw Error("negative weight");
        if (!std::isfinite(v)) throw Error("non-finite weight");
        total += v;
    }
    if (total <= 0.0) throw Error("weights sum to zero");
    for (double& v : raw) v /= total;
    WeightVector w;
    w.w = std::move(raw);
    return w;
}

WeightVector pad_weights(const WeightVector& w, std::size_t n) {
    WeightVector out = w;
    if (out.w.size() > n) throw Error("weight vector longer than configuration");
    out.w.resize(n, 0.0);
    return out;
}

}  // namespace tentmle
