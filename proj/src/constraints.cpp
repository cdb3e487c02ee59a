#include "tentmle/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <unordered_map>

namespace tentmle {

namespace {

double normalize_zero(double v) { return v == 0.0 ? 0.0 : v; }

struct VecHash {
    std::size_t operator()(const Vec& p) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (double c : p) {
            double n = normalize_zero(c);
            std::uint64_t bits;
            std::memcpy(&bits, &n, sizeof bits);
            h = (h ^ bits) * 0x100000001b3ULL;
        }
        return h;
    }
};

HeightIneq make_row(std::initializer_list<std::pair<int, double>> terms) {
    std::map<int, double> acc;
    for (auto& [i, c] : terms) acc[i] += c;
    HeightIneq row;
    for (auto& [i, c] : acc)
        if (c != 0.0) row.terms.emplace_back(i, c);
    return row;
}

void push_unique(HeightIneqSystem& S, HeightIneq row,
                 std::map<std::vector<std::pair<int, long long>>, bool>& seen) {
    if (row.terms.empty()) return;
    std::vector<std::pair<int, long long>> key;
    key.reserve(row.terms.size());
    for (auto& [i, c] : row.terms) key.emplace_back(i, llround(c * 1e9));
    if (seen.emplace(std::move(key), true).second) S.rows.push_back(std::move(row));
}

}  // namespace

HeightIneqSystem supermodular_constraints_2d(const IndexTable& table, int n) {
    HeightIneqSystem S;
    S.kind = IneqKind::supermodular;
    S.n = n;
    const std::size_t nx = table.xs.size(), ny = table.ys.size();
    for (std::size_t i = 0; i + 1 < nx; ++i) {
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            int a = table.at(i, j), b = table.at(i + 1, j);
            int c = table.at(i, j + 1), e = table.at(i + 1, j + 1);
            if (!a || !b || !c || !e) continue;
            S.rows.push_back(make_row({{a - 1, 1.0}, {e - 1, 1.0}, {b - 1, -1.0}, {c - 1, -1.0}}));
        }
    }
    return S;
}

HeightIneqSystem supermodular_constraints_general(const PointConfig& X) {
    HeightIneqSystem S;
    S.kind = IneqKind::supermodular;
    S.n = static_cast<int>(X.size());
    std::unordered_map<Vec, int, VecHash> index;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Vec p = X.pts[i];
        for (double& c : p) c = normalize_zero(c);
        index.emplace(std::move(p), static_cast<int>(i));
    }
    std::map<std::vector<std::pair<int, long long>>, bool> seen;
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (leq_componentwise(X.pts[i], X.pts[j]) || leq_componentwise(X.pts[j], X.pts[i]))
                continue;
            Vec lo = meet(X.pts[i], X.pts[j]), hi = join(X.pts[i], X.pts[j]);
            for (double& c : lo) c = normalize_zero(c);
            for (double& c : hi) c = normalize_zero(c);
            auto itl = index.find(lo), ith = index.find(hi);
            if (itl == index.end() || ith == index.end())
                throw MissingLatticePoint("configuration is not min-max closed");
            push_unique(S,
                        make_row({{itl->second, 1.0},
                                  {ith->second, 1.0},
                                  {static_cast<int>(i), -1.0},
                                  {static_cast<int>(j), -1.0}}),
                        seen);
        }
    }
    return S;
}

HeightIneqSystem lnatural_constraints(const PointConfig& X) {
    HeightIneqSystem S;
    S.kind = IneqKind::lnatural;
    S.n = static_cast<int>(X.size());
    if (!X.lattice_scale)
        throw NotLNaturalClosed("configuration carries no lattice scale");
    const int d = X.dim;
    const double m = static_cast<double>(*X.lattice_scale);
    std::unordered_map<Vec, int, VecHash> index;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Vec z(d);
        for (int c = 0; c < d; ++c) z[c] = normalize_zero(std::round(X.pts[i][c] * m));
        if (!index.emplace(std::move(z), static_cast<int>(i)).second)
            throw Error("duplicate lattice point");
    }
    // directions e_0 = -(1,...,1), e_1, ..., e_d
    auto shifted = [&](const Vec& z, int i, int j) {
        Vec r = z;
        auto add = [&](int e) {
            if (e == 0)
                for (int c = 0; c < d; ++c) r[c] -= 1.0;
            else
                r[e - 1] += 1.0;
        };
        add(i);
        if (j >= 0) add(j);
        for (double& c : r) c = normalize_zero(c);
        return r;
    };
    std::map<std::vector<std::pair<int, long long>>, bool> seen;
    for (std::size_t p = 0; p < X.size(); ++p) {
        Vec z(d);
        for (int c = 0; c < d; ++c) z[c] = normalize_zero(std::round(X.pts[p][c] * m));
        for (int i = 0; i <= d; ++i) {
            for (int j = i + 1; j <= d; ++j) {
                auto a = index.find(shifted(z, i, -1));
                if (a == index.end()) continue;
                auto b = index.find(shifted(z, j, -1));
                if (b == index.end()) continue;
                auto ab = index.find(shifted(z, i, j));
                if (ab == index.end()) continue;
                push_unique(S,
                            make_row({{static_cast<int>(p), 1.0},
                                      {ab->second, 1.0},
                                      {a->second, -1.0},
                                      {b->second, -1.0}}),
                            seen);
            }
        }
    }
    return S;
}

HeightCheck check_heights(const HeightIneqSystem& S, const Vec& y, double tol) {
    HeightCheck res;
    for (std::size_t r = 0; r < S.rows.size(); ++r) {
        double v = S.rows[r].value(y);
        if (v < res.worst) {
            res.worst = v;
            res.row = static_cast<int>(r);
        }
    }
    res.feasible = res.worst >= -tol;
    return res;
}

}  // namespace tentmle
