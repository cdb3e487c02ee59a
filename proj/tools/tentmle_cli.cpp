#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tentmle/io.hpp"
#include "tentmle/pipeline.hpp"
#include "tentmle/rng.hpp"

using nlohmann::json;
using namespace tentmle;

namespace {

struct Options {
    std::string input, output, ref;
    std::string model = "lc";
    std::string weights = "uniform";
    int round = 1;
    int iters = 20'000;
    double box = 50.0;
    double tol = 1e-4;
    int grid = 200;
    long long seed = 1;
    long long n = 55;
    int dim = 2;
    bool discrete = false;
    bool serial = false;
    std::string grid_out;
};

json points_json(const PointConfig& X) {
    json j;
    j["dim"] = X.dim;
    j["origin_count"] = X.origin_count;
    if (X.lattice_scale) j["lattice_scale"] = *X.lattice_scale;
    j["points"] = X.pts;
    return j;
}

json polytope_json(const Polytope& P) {
    json j;
    j["dim"] = P.dim;
    json rows = json::array();
    for (auto& r : P.hrep) rows.push_back({{"a", r.a}, {"b", r.b}});
    j["hrep"] = std::move(rows);
    j["vrep"] = P.vrep;
    return j;
}

void emit(const Options& opt, const json& j) {
    if (opt.output.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(opt.output);
        if (!out) throw Error("cannot write " + opt.output);
        out << j.dump(2) << "\n";
    }
}

std::pair<PointConfig, WeightVector> load_samples(const Options& opt) {
    if (opt.input.empty()) throw ParseError("--input is required");
    bool inline_w = opt.weights == "inline";
    CsvSamples s = read_samples_csv(opt.input, inline_w);
    WeightVector w;
    if (inline_w) {
        w = normalize_weights(s.raw_weights);
    } else if (opt.weights != "uniform") {
        std::ifstream in(opt.weights);
        if (!in) throw ParseError("cannot open weight file " + opt.weights);
        std::vector<double> raw;
        double v;
        while (in >> v) raw.push_back(v);
        if (raw.size() != s.config.size())
            throw ParseError("weight file has " + std::to_string(raw.size()) + " entries for " +
                             std::to_string(s.config.size()) + " samples");
        w = normalize_weights(raw);
    } else {
        w = uniform_weights(s.config.size());
    }
    return {std::move(s.config), std::move(w)};
}

EstimateSettings settings_from(const Options& opt) {
    EstimateSettings s;
    s.solver.iters = opt.iters;
    s.solver.box = opt.box;
    s.solver.tol = opt.tol;
    s.solver.parallel = !opt.serial;
    s.round_decimals = opt.round;
    return s;
}

int cmd_demo(const Options& opt) {
    GaussianSampler g((std::uint64_t)opt.seed);
    PointConfig X = g.sample((std::size_t)opt.n, opt.dim);
    if (opt.output.empty()) throw ParseError("--output is required for demo");
    write_samples_csv(opt.output, X);
    std::cerr << "wrote " << opt.n << " samples to " << opt.output << "\n";
    return 0;
}

int cmd_closure(const Options& opt) {
    auto [X, w] = load_samples(opt);
    PointConfig closed = minmax_closure_exact(X);
    json j = points_json(closed);
    j["added"] = closed.size() - closed.origin_count;
    emit(opt, j);
    return 0;
}

int cmd_mmconv(const Options& opt) {
    auto [X, w] = load_samples(opt);
    Polytope P = mmconv(X);
    emit(opt, polytope_json(P));
    return 0;
}

int cmd_lext(const Options& opt) {
    auto [X, w] = load_samples(opt);
    if (opt.discrete) {
        EstimateSettings s = settings_from(opt);
        double scale = std::pow(10.0, s.round_decimals);
        PointConfig rounded = X;
        for (auto& p : rounded.pts)
            for (double& v : p) v = std::llround(v * scale) / scale;
        PointConfig ext = discrete_l_extension(rounded);
        emit(opt, points_json(ext));
    } else {
        emit(opt, polytope_json(l_extension_polytope(X)));
    }
    return 0;
}

int cmd_mle(const Options& opt) {
    auto [X, w] = load_samples(opt);
    EstimateSettings s = settings_from(opt);
    EstimateResult r;
    if (opt.model == "lc") {
        r = mle_logconcave(X, w, s);
    } else if (opt.model == "mtp2") {
        if (X.dim == 2) {
            r = mle_mtp2_2d(X, w, s);
        } else {
            std::cerr << "note: d = " << X.dim
                      << " uses the pairwise system; no tidiness certificate\n";
            s.mtp2_general = true;
            r = mle_mtp2_general(X, w, s);
        }
    } else if (opt.model == "llc") {
        r = mle_llc(X, w, s);
    } else {
        throw ParseError("unknown model '" + opt.model + "'");
    }
    std::string out = opt.output.empty() ? "estimate.json" : opt.output;
    write_estimate_json(out, r);
    std::cerr << model_name(r.model) << ": objective " << r.run.objective << ", integral "
              << r.integral << ", gap " << r.run.gap << (r.run.converged ? "" : " (not converged)")
              << ", wrote " << out << "\n";
    if (!opt.grid_out.empty()) write_density_grid_csv(opt.grid_out, r, opt.grid);
    return 0;
}

int cmd_eval(const Options& opt) {
    if (opt.input.empty()) throw ParseError("--input is required");
    if (opt.output.empty()) throw ParseError("--output is required for eval");
    EstimateResult r = read_estimate_json(opt.input);
    write_density_grid_csv(opt.output, r, opt.grid);
    return 0;
}

int cmd_losses(const Options& opt) {
    if (opt.input.empty()) throw ParseError("--input is required");
    if (opt.ref.empty()) throw ParseError("--ref is required (standard-gaussian or a grid CSV)");
    EstimateResult r = read_estimate_json(opt.input);
    LossReport rep = losses_against(r, opt.ref, opt.grid);
    json j = json::parse(loss_report_json(rep));
    emit(opt, j);
    return 0;
}

int cmd_check(const Options& opt) {
    if (opt.input.empty()) throw ParseError("--input is required");
    EstimateResult r = read_estimate_json(opt.input);
    double integral = integral_exp_tent(r.config, r.tent, r.heights, !opt.serial);
    std::vector<int> bad_walls, bad_cells;
    bool sup = is_supermodular_tent(r.tent, &bad_walls);
    bool lnat = is_lnatural_tent(r.config, r.tent, &bad_cells);
    int tight = 0;
    for (char t : r.tent.tight) tight += t ? 1 : 0;
    json j;
    j["model"] = model_name(r.model);
    j["n"] = r.config.size();
    j["dim"] = r.config.dim;
    j["integral_stored"] = r.integral;
    j["integral_recomputed"] = integral;
    j["integral_match"] = std::fabs(integral - r.integral) <= 1e-9 * std::max(1.0, r.integral);
    j["supermodular_ok"] = sup;
    j["offending_walls"] = bad_walls;
    j["lnatural_ok"] = lnat;
    j["offending_cells"] = bad_cells;
    j["tight_points"] = tight;
    j["cells"] = r.tent.cells.size();
    j["walls"] = r.tent.walls.size();
    emit(opt, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tent-function density estimation under total-positivity constraints"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "input file (CSV samples or estimate JSON)");
        sub->add_option("--output", opt.output, "output file (default stdout for JSON)");
        sub->add_option("--model", opt.model, "lc | mtp2 | llc")
            ->check(CLI::IsMember({"lc", "mtp2", "llc"}));
        sub->add_option("--weights", opt.weights, "uniform | inline | FILE");
        sub->add_option("--round", opt.round, "llc rounding decimals");
        sub->add_option("--iters", opt.iters, "Frank-Wolfe iteration cap");
        sub->add_option("--box", opt.box, "height box bound");
        sub->add_option("--tol", opt.tol, "duality gap tolerance");
        sub->add_option("--grid", opt.grid, "grid resolution per axis");
        sub->add_option("--seed", opt.seed, "PRNG seed");
        sub->add_flag("--serial", opt.serial, "disable parallel kernels");
        return sub;
    };

    auto* demo = add_common(app.add_subcommand("demo", "seeded standard-Gaussian sample CSV"));
    demo->add_option("--n", opt.n, "sample count");
    demo->add_option("--dim", opt.dim, "dimension");
    add_common(app.add_subcommand("closure", "exact min-max closure of the samples"));
    add_common(app.add_subcommand("mmconv", "min-max convex hull (bimonotone H-rep)"));
    auto* lext = add_common(app.add_subcommand("lext", "L-natural extension"));
    lext->add_flag("--discrete", opt.discrete, "emit the discrete lattice extension");
    auto* mle = add_common(app.add_subcommand("mle", "fit a density estimate"));
    mle->add_option("--grid-out", opt.grid_out, "also write a density grid CSV here");
    add_common(app.add_subcommand("eval", "evaluate a stored estimate on a density grid"));
    auto* losses = add_common(app.add_subcommand("losses", "losses against a reference density"));
    losses->add_option("--ref", opt.ref, "standard-gaussian or a density grid CSV");
    add_common(app.add_subcommand("check", "re-verify a stored estimate"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("demo")) return cmd_demo(opt);
        if (app.got_subcommand("closure")) return cmd_closure(opt);
        if (app.got_subcommand("mmconv")) return cmd_mmconv(opt);
        if (app.got_subcommand("lext")) return cmd_lext(opt);
        if (app.got_subcommand("mle")) return cmd_mle(opt);
        if (app.got_subcommand("eval")) return cmd_eval(opt);
        if (app.got_subcommand("losses")) return cmd_losses(opt);
        if (app.got_subcommand("check")) return cmd_check(opt);
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientSamples& e) {
        std::cerr << "InsufficientSamples: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateSupport& e) {
        std::cerr << "DegenerateSupport: " << e.what() << "\n";
        return 3;
    } catch (const IrrationalInput& e) {
        std::cerr << "IrrationalInput: " << e.what() << "\n";
        return 2;
    } catch (const MissingLatticePoint& e) {
        std::cerr << "MissingLatticePoint: " << e.what() << "\n";
        return 2;
    } catch (const NotLNaturalClosed& e) {
        std::cerr << "NotLNaturalClosed: " << e.what() << "\n";
        return 2;
    } catch (const LpNumericalFailure& e) {
        std::cerr << "LpNumericalFailure: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateHull& e) {
        std::cerr << "DegenerateHull: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateSimplex& e) {
        std::cerr << "DegenerateSimplex: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
