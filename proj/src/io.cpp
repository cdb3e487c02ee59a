#include "tentmle/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tentmle {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r')
            cur += ch;
    }
    out.push_back(cur);
    for (auto& f : out) {
        std::size_t a = f.find_first_not_of(" \t");
        std::size_t b = f.find_last_not_of(" \t");
        f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

CsvSamples read_samples_csv(const std::string& path, bool inline_weights) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    CsvSamples out;
    std::string line;
    bool first = true;
    std::size_t ncols = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[0] == '#') continue;
        auto fields = split_csv(line);
        if (first) {
            double tmp;
            bool numeric = true;
            for (auto& f : fields)
                if (!parse_double(f, tmp)) numeric = false;
            first = false;
            if (!numeric) continue;  // header row
        }
        if (ncols == 0) {
            ncols = fields.size();
            if ((int)ncols - (inline_weights ? 1 : 0) < 1)
                throw ParseError(path + ": too few columns");
        } else if (fields.size() != ncols)
            throw ParseError(path + ":" + std::to_string(lineno) + ": ragged row");
        Vec row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!parse_double(fields[c], row[c]))
                throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" +
                                 fields[c] + "'");
        if (inline_weights) {
            out.raw_weights.push_back(row.back());
            row.pop_back();
        }
        out.config.pts.push_back(std::move(row));
    }
    if (out.config.pts.empty()) throw ParseError(path + ": no sample rows");
    out.config.dim = (int)out.config.pts[0].size();
    out.config.origin_count = out.config.pts.size();
    return out;
}

void write_samples_csv(const std::string& path, const PointConfig& X) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (int c = 0; c < X.dim; ++c) out << (c ? ",x" : "x") << c + 1;
    out << "\n";
    for (auto& p : X.pts) {
        for (int c = 0; c < X.dim; ++c) out << (c ? "," : "") << fmt17(p[c]);
        out << "\n";
    }
}

namespace {

json polytope_to_json(const Polytope& P) {
    json j;
    j["dim"] = P.dim;
    json rows = json::array();
    for (auto& r : P.hrep) rows.push_back({{"a", r.a}, {"b", r.b}});
    j["hrep"] = std::move(rows);
    j["vrep"] = P.vrep;
    return j;
}

Polytope polytope_from_json(const json& j) {
    Polytope P;
    P.dim = j.at("dim").get<int>();
    for (auto& r : j.at("hrep")) P.hrep.push_back({r.at("a").get<Vec>(), r.at("b").get<double>()});
    P.vrep = j.at("vrep").get<std::vector<Vec>>();
    return P;
}

json tent_to_json(const TentSubdivision& T) {
    json j;
    j["dim"] = T.dim;
    j["simplices"] = T.simplices;
    j["simplex_nbr"] = T.simplex_nbr;
    j["simplex_cell"] = T.simplex_cell;
    json cells = json::array();
    for (auto& c : T.cells)
        cells.push_back({{"points", c.points},
                         {"simplices", c.simplices},
                         {"fn_a", c.fn.a},
                         {"fn_b", c.fn.b}});
    j["cells"] = std::move(cells);
    json walls = json::array();
    for (auto& w : T.walls)
        walls.push_back({{"cell_a", w.cell_a},
                         {"cell_b", w.cell_b},
                         {"points", w.points},
                         {"normal", w.normal},
                         {"offset", w.offset},
                         {"bimonotone", w.bimonotone}});
    j["walls"] = std::move(walls);
    j["hull_value"] = T.hull_value;
    j["height_gap"] = T.height_gap;
    std::vector<int> tight(T.tight.begin(), T.tight.end());
    j["tight"] = std::move(tight);
    j["domain_volume"] = T.domain_volume;
    return j;
}

TentSubdivision tent_from_json(const json& j) {
    TentSubdivision T;
    T.dim = j.at("dim").get<int>();
    T.simplices = j.at("simplices").get<std::vector<std::vector<int>>>();
    T.simplex_nbr = j.at("simplex_nbr").get<std::vector<std::vector<int>>>();
    T.simplex_cell = j.at("simplex_cell").get<std::vector<int>>();
    for (auto& c : j.at("cells")) {
        Cell cell;
        cell.points = c.at("points").get<std::vector<int>>();
        cell.simplices = c.at("simplices").get<std::vector<int>>();
        cell.fn.a = c.at("fn_a").get<Vec>();
        cell.fn.b = c.at("fn_b").get<double>();
        T.cells.push_back(std::move(cell));
    }
    for (auto& w : j.at("walls")) {
        Wall wall;
        wall.cell_a = w.at("cell_a").get<int>();
        wall.cell_b = w.at("cell_b").get<int>();
        wall.points = w.at("points").get<std::vector<int>>();
        wall.normal = w.at("normal").get<Vec>();
        wall.offset = w.at("offset").get<double>();
        wall.bimonotone = w.at("bimonotone").get<bool>();
        T.walls.push_back(std::move(wall));
    }
    T.hull_value = j.at("hull_value").get<std::vector<double>>();
    T.height_gap = j.at("height_gap").get<std::vector<double>>();
    auto tight = j.at("tight").get<std::vector<int>>();
    T.tight.assign(tight.begin(), tight.end());
    T.domain_volume = j.at("domain_volume").get<double>();
    return T;
}

}  // namespace

std::string estimate_to_json(const EstimateResult& r) {
    json j;
    j["model"] = model_name(r.model);
    j["dim"] = r.config.dim;
    j["origin_count"] = r.config.origin_count;
    if (r.config.lattice_scale)
        j["lattice_scale"] = *r.config.lattice_scale;
    else
        j["lattice_scale"] = nullptr;
    j["points"] = r.config.pts;
    j["weights"] = r.weights.w;
    j["heights"] = r.heights;
    j["tent"] = tent_to_json(r.tent);
    j["run"] = {{"y", r.run.y},
                {"objective", r.run.objective},
                {"integral", r.run.integral},
                {"gap", r.run.gap},
                {"iterations", r.run.iterations},
                {"converged", r.run.converged},
                {"gap_stalled", r.run.gap_stalled}};
    json trace = json::array();
    for (auto& t : r.run.trace) trace.push_back({{"iter", t.iter}, {"objective", t.objective}, {"gap", t.gap}});
    j["run"]["trace"] = std::move(trace);
    j["integral"] = r.integral;
    j["loglik"] = r.loglik;
    j["supermodular_ok"] = r.supermodular_ok;
    j["lnatural_ok"] = r.lnatural_ok;
    j["support"] = polytope_to_json(r.support);
    return j.dump(2);
}

EstimateResult estimate_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        EstimateResult r;
        std::string name = j.at("model").get<std::string>();
        if (name == "lc")
            r.model = Model::logconcave;
        else if (name == "mtp2")
            r.model = Model::mtp2;
        else if (name == "llc")
            r.model = Model::llc;
        else
            throw ParseError("unknown model '" + name + "'");
        r.config.dim = j.at("dim").get<int>();
        r.config.origin_count = j.at("origin_count").get<std::size_t>();
        if (!j.at("lattice_scale").is_null())
            r.config.lattice_scale = j.at("lattice_scale").get<long long>();
        r.config.pts = j.at("points").get<std::vector<Vec>>();
        r.weights.w = j.at("weights").get<std::vector<double>>();
        r.heights = j.at("heights").get<Vec>();
        r.tent = tent_from_json(j.at("tent"));
        const json& run = j.at("run");
        r.run.y = run.at("y").get<Vec>();
        r.run.objective = run.at("objective").get<double>();
        r.run.integral = run.at("integral").get<double>();
        r.run.gap = run.at("gap").get<double>();
        r.run.iterations = run.at("iterations").get<int>();
        r.run.converged = run.at("converged").get<bool>();
        r.run.gap_stalled = run.at("gap_stalled").get<bool>();
        for (auto& t : run.at("trace"))
            r.run.trace.push_back({t.at("iter").get<int>(), t.at("objective").get<double>(),
                                   t.at("gap").get<double>()});
        r.integral = j.at("integral").get<double>();
        r.loglik = j.at("loglik").get<double>();
        r.supermodular_ok = j.at("supermodular_ok").get<bool>();
        r.lnatural_ok = j.at("lnatural_ok").get<bool>();
        r.support = polytope_from_json(j.at("support"));
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed estimate json: ") + e.what());
    }
}

void write_estimate_json(const std::string& path, const EstimateResult& r) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << estimate_to_json(r) << "\n";
}

EstimateResult read_estimate_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return estimate_from_json(ss.str());
}

namespace {

struct GridSpec {
    Vec lo, hi;       // quadrature box
    int grid = 0;     // cells per axis
    int dim = 0;

    double cell_volume() const {
        double v = 1.0;
        for (int c = 0; c < dim; ++c) v *= (hi[c] - lo[c]) / grid;
        return v;
    }
    Vec midpoint(long long flat) const {
        Vec x(dim);
        for (int c = dim - 1; c >= 0; --c) {
            long long i = flat % grid;
            flat /= grid;
            x[c] = lo[c] + (i + 0.5) * (hi[c] - lo[c]) / grid;
        }
        return x;
    }
    long long cells() const {
        long long total = 1;
        for (int c = 0; c < dim; ++c) {
            total *= grid;
            if (total > 20'000'000) throw Error("density grid too large");
        }
        return total;
    }
};

GridSpec config_box(const EstimateResult& r, int grid) {
    GridSpec g;
    g.dim = r.config.dim;
    g.grid = grid;
    g.lo.assign(g.dim, 1e300);
    g.hi.assign(g.dim, -1e300);
    for (auto& p : r.config.pts)
        for (int c = 0; c < g.dim; ++c) {
            g.lo[c] = std::min(g.lo[c], p[c]);
            g.hi[c] = std::max(g.hi[c], p[c]);
        }
    return g;
}

double tent_density(const EstimateResult& r, const Vec& x) {
    double v = eval_tent(r.config, r.tent, x);
    return std::isfinite(v) ? std::exp(v) : 0.0;
}

double standard_gaussian(const Vec& x) {
    double q = 0.0;
    for (double v : x) q += v * v;
    return std::exp(-0.5 * q) / std::pow(2.0 * M_PI, 0.5 * x.size());
}

}  // namespace

void write_density_grid_csv(const std::string& path, const EstimateResult& r, int grid) {
    if (grid < 1) throw Error("grid must be positive");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    GridSpec g = config_box(r, grid);
    long long total = g.cells();
    for (int c = 0; c < g.dim; ++c) out << "x" << c + 1 << ",";
    out << "density\n";
    for (long long k = 0; k < total; ++k) {
        Vec x = g.midpoint(k);
        for (int c = 0; c < g.dim; ++c) out << fmt17(x[c]) << ",";
        out << fmt17(tent_density(r, x)) << "\n";
    }
}

LossReport losses_against(const EstimateResult& r, const std::string& reference, int grid) {
    LossReport rep;
    double l2 = 0.0, hel = 0.0, linf = 0.0;
    if (reference == "standard-gaussian") {
        if (grid < 1) throw Error("grid must be positive");
        GridSpec g = config_box(r, grid);
        for (int c = 0; c < g.dim; ++c) {
            g.lo[c] = std::min(g.lo[c], -5.0);
            g.hi[c] = std::max(g.hi[c], 5.0);
        }
        long long total = g.cells();
        double vol = g.cell_volume();
        for (long long k = 0; k < total; ++k) {
            Vec x = g.midpoint(k);
            double f = tent_density(r, x);
            double gg = standard_gaussian(x);
            l2 += (f - gg) * (f - gg) * vol;
            double ds = std::sqrt(f) - std::sqrt(gg);
            hel += ds * ds * vol;
            linf = std::max(linf, std::fabs(f - gg));
        }
        rep.grid = grid;
        rep.box_lo = *std::min_element(g.lo.begin(), g.lo.end());
        rep.box_hi = *std::max_element(g.hi.begin(), g.hi.end());
    } else {
        // reference is a density grid CSV: midpoint coordinates then density
        std::ifstream in(reference);
        if (!in) throw ParseError("cannot open " + reference);
        int d = r.config.dim;
        std::string line;
        std::vector<Vec> xs;
        std::vector<double> ref;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto fields = split_csv(line);
            if (first) {
                first = false;
                double tmp;
                bool numeric = true;
                for (auto& f : fields)
                    if (!parse_double(f, tmp)) numeric = false;
                if (!numeric) continue;
            }
            if ((int)fields.size() != d + 1)
                throw ParseError(reference + ": expected " + std::to_string(d + 1) + " columns");
            Vec row(d);
            double val;
            for (int c = 0; c < d; ++c)
                if (!parse_double(fields[c], row[c])) throw ParseError(reference + ": bad number");
            if (!parse_double(fields.back(), val)) throw ParseError(reference + ": bad number");
            xs.push_back(std::move(row));
            ref.push_back(val);
        }
        if (xs.empty()) throw ParseError(reference + ": no rows");
        // uniform midpoint grid: spacing from distinct per-axis values
        double vol = 1.0;
        Vec lo(d, 1e300), hi(d, -1e300);
        for (int c = 0; c < d; ++c) {
            std::vector<double> vals;
            for (auto& x : xs) vals.push_back(x[c]);
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            double step = vals.size() > 1 ? vals[1] - vals[0] : 1.0;
            vol *= step;
            lo[c] = vals.front() - 0.5 * step;
            hi[c] = vals.back() + 0.5 * step;
        }
        for (std::size_t k = 0; k < xs.size(); ++k) {
            double f = tent_density(r, xs[k]);
            double gg = ref[k];
            l2 += (f - gg) * (f - gg) * vol;
            double ds = std::sqrt(std::max(f, 0.0)) - std::sqrt(std::max(gg, 0.0));
            hel += ds * ds * vol;
            linf = std::max(linf, std::fabs(f - gg));
        }
        long long per_axis = (long long)std::llround(std::pow((double)xs.size(), 1.0 / d));
        rep.grid = (int)per_axis;
        rep.box_lo = *std::min_element(lo.begin(), lo.end());
        rep.box_hi = *std::max_element(hi.begin(), hi.end());
    }
    rep.l2 = std::sqrt(std::max(l2, 0.0));
    rep.hellinger = std::sqrt(std::max(0.5 * hel, 0.0));
    rep.linf = linf;
    return rep;
}

std::string loss_report_json(const LossReport& rep) {
    json j;
    j["l2"] = rep.l2;
    j["hellinger"] = rep.hellinger;
    j["linf"] = rep.linf;
    j["grid"] = rep.grid;
    j["box_lo"] = rep.box_lo;
    j["box_hi"] = rep.box_hi;
    return j.dump(2);
}

}  // namespace tentmle
