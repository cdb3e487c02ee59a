#pragma once

#include <cstdint>
#include <random>

#include "tentmle/types.hpp"

namespace tentmle {

// Hand-rolled Box-Muller on mt19937_64 so that a seed pins the byte stream
// across platforms (std::normal_distribution is implementation-defined).
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = unit();
        double u2 = unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    PointConfig sample(std::size_t n, int dim) {
        PointConfig X;
        X.dim = dim;
        X.origin_count = n;
        X.pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vec p(dim);
            for (int c = 0; c < dim; ++c) p[c] = next();
            X.pts.push_back(std::move(p));
        }
        return X;
    }

  private:
    double unit() {
        // uniform in (0, 1]; avoids log(0)
        return (static_cast<double>(eng_() >> 11) + 1.0) * (1.0 / 9007199254740993.0);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic value in (0.5, 1], keyed by index; used for tie-breaking lifts.
inline double hash_unit(std::uint64_t i, std::uint64_t salt) {
    return 0.5 + 0.5 * (static_cast<double>(splitmix64(i * 0x9e3779b97f4a7c15ULL + salt) >> 11) + 1.0) /
                     9007199254740993.0;
}

}  // namespace tentmle
