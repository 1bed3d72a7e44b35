// dspec: spectral analysis of weighted-graph Dirichlet forms from the shell.
//
// Subcommands: spectrum, persson, bounds, capacity, mc, perturb, build.
// Exit codes: 0 success, 2 validation error, 3 numerical failure,
// 4 violated mathematical bound (the red flag for CI).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dspec/forms.hpp"
#include "dspec/io.hpp"
#include "dspec/kernels.hpp"
#include "dspec/parallel.hpp"
#include "dspec/perturbations.hpp"
#include "dspec/potential.hpp"
#include "dspec/spectral.hpp"
#include "dspec/stochastic.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBoundViolated = 4;

struct Options {
    std::string input;
    std::string preset;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 1;
    int threads = 1;

    // preset parameters
    int n = 101;
    double weight = 1.0;
    double alpha = 1.0;
    double growth = 2.0;
    int center = -1;
    std::vector<int> extent;

    // analysis parameters
    std::vector<int> set_b;
    std::vector<int> set_a;
    std::vector<int> f_set;
    double t = 1.0;
    int k = 0;
    int root = -1;
    int max_radius = -1;
    std::string explicit_sets;
    std::string estimator = "semigroup";
    std::size_t samples = 10000;
    int start = 0;
    double w_const = 0.0;
    std::string pert_file;
    std::string check = "domination";
};

dspec::WeightedGraph load_source(const Options& opt) {
    if (!opt.input.empty()) {
        const std::string text = dspec::read_file(opt.input);
        const auto probe = nlohmann::json::parse(text, nullptr, false);
        if (probe.is_discarded()) throw dspec::ConfigError("malformed JSON in " + opt.input);
        if (probe.contains("grid")) return dspec::build_from_model_json(text);
        return dspec::load_graph_json(text);
    }
    if (opt.preset == "path") return dspec::lattice_path(opt.n, opt.weight);
    if (opt.preset == "lattice") {
        if (opt.extent.empty()) return dspec::lattice_path(opt.n, opt.weight);
        return dspec::lattice_graph(opt.extent, opt.weight);
    }
    if (opt.preset == "fractional-1d") {
        if (opt.n < 2) throw dspec::ConfigError("fractional-1d needs --n >= 2");
        dspec::GridSpec grid;
        grid.dim = 1;
        grid.extent = {opt.n};
        grid.h = 1.0 / static_cast<double>(opt.n - 1);
        return dspec::fractional_graph(grid, opt.alpha);
    }
    if (opt.preset == "confining") {
        const auto base = dspec::lattice_path(opt.n, opt.weight);
        const int center = opt.center >= 0 ? opt.center : opt.n / 2;
        return dspec::confining_potential(base, center, opt.growth);
    }
    if (opt.preset.empty())
        throw dspec::ConfigError("no graph source: pass --input or --preset");
    throw dspec::ConfigError("unknown preset \"" + opt.preset +
                             "\" (expected path, lattice, fractional-1d, confining)");
}

void emit(const Options& opt, const std::string& text) {
    if (opt.output.empty())
        std::cout << text;
    else
        dspec::atomic_write_file(opt.output, text);
}

void require_json_format(const Options& opt, const char* cmd) {
    if (opt.format != "json")
        throw dspec::ConfigError(std::string(cmd) + " only emits json");
}

std::vector<dspec::VertexSet> make_exhaustion(const Options& opt, const dspec::WeightedGraph& g) {
    if (!opt.explicit_sets.empty()) {
        std::vector<dspec::VertexSet> out;
        std::stringstream groups(opt.explicit_sets);
        std::string group;
        while (std::getline(groups, group, ';')) {
            std::vector<int> ids;
            std::stringstream ss(group);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) ids.push_back(std::stoi(item));
            out.emplace_back(std::move(ids));
        }
        return out;
    }
    if (opt.max_radius >= 0) {
        const int root = opt.root >= 0 ? opt.root : g.n / 2;
        return dspec::ball_exhaustion(g, root, opt.max_radius);
    }
    return {dspec::VertexSet{}}; // no removal: single entry, the full ground value
}

json summary_json(const dspec::SpectralSummary& s) {
    json out;
    out["eigenvalues"] = s.eigenvalues;
    out["residuals"] = s.residuals;
    out["method"] = s.method == dspec::EigMethod::Dense ? "dense" : "iterative";
    out["k"] = s.requested;
    return out;
}

std::string sweep_csv(const dspec::PerssonSweep& sweep) {
    std::ostringstream csv;
    csv << "n,size,lambda,residual\n";
    csv.precision(17);
    for (std::size_t i = 0; i < sweep.ground_values.size(); ++i)
        csv << i << ',' << sweep.exhaustion[i].size() << ',' << sweep.ground_values[i] << ','
            << sweep.residuals[i] << '\n';
    return csv.str();
}

json sweep_summary(const dspec::PerssonSweep& sweep) {
    json out;
    out["lambda0"] = sweep.lambda0;
    out["monotone"] = sweep.monotone;
    out["ground_values"] = sweep.ground_values;
    return out;
}

int cmd_spectrum(const Options& opt) {
    const auto fs = dspec::assemble(load_source(opt));
    dspec::SpectralSummary summary =
        opt.k > 0 ? dspec::bottom_of_spectrum(fs, opt.k) : dspec::spectrum_dense(fs);
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "index,eigenvalue,residual\n";
        csv.precision(17);
        for (std::size_t i = 0; i < summary.eigenvalues.size(); ++i)
            csv << i << ',' << summary.eigenvalues[i] << ',' << summary.residuals[i] << '\n';
        emit(opt, csv.str());
    } else {
        emit(opt, summary_json(summary).dump() + "\n");
    }
    return kExitOk;
}

int cmd_persson(const Options& opt) {
    const auto g = load_source(opt);
    const auto fs = dspec::assemble(g);
    const auto sweep = dspec::persson_sweep(fs, make_exhaustion(opt, g));
    if (!opt.output.empty()) dspec::atomic_write_file(opt.output, sweep_csv(sweep));
    std::cout << sweep_summary(sweep).dump() << "\n";
    return kExitOk;
}

int cmd_bounds(const Options& opt) {
    require_json_format(opt, "bounds");
    const auto fs = dspec::assemble(load_source(opt));
    const auto bc =
        dspec::bound_check(fs, dspec::VertexSet(opt.set_b), dspec::VertexSet(opt.set_a), opt.t);
    json out;
    out["t"] = bc.t;
    out["A"] = bc.A.ids();
    out["B"] = bc.B.ids();
    out["lhs"] = bc.lhs;
    out["rhs_prob"] = bc.rhs_prob;
    out["rhs_eq"] = bc.rhs_eq;
    out["pass"] = bc.pass();
    emit(opt, out.dump() + "\n");
    return bc.pass() ? kExitOk : kExitBoundViolated;
}

int cmd_capacity(const Options& opt) {
    require_json_format(opt, "capacity");
    const auto fs = dspec::assemble(load_source(opt));
    const auto eq = dspec::equilibrium_potential(fs, dspec::VertexSet(opt.set_b));
    json out;
    out["B"] = eq.B.ids();
    out["e_B"] = std::vector<double>(eq.e_B.data(), eq.e_B.data() + eq.e_B.size());
    out["cap"] = eq.cap_value;
    out["cap_squared"] = eq.cap_squared();
    emit(opt, out.dump() + "\n");
    return kExitOk;
}

int cmd_mc(const Options& opt) {
    require_json_format(opt, "mc");
    const auto fs = dspec::assemble(load_source(opt));
    Eigen::VectorXd f = Eigen::VectorXd::Ones(fs.n());
    if (!opt.f_set.empty()) {
        f.setZero();
        for (int x : dspec::VertexSet(opt.f_set)) {
            if (x >= fs.n()) throw dspec::IndexOutOfRange("--f-set index out of range");
            f[x] = 1.0;
        }
    }
    const dspec::VertexSet target(opt.set_b);

    dspec::MCEstimate est;
    if (opt.estimator == "semigroup") {
        est = dspec::mc_semigroup(fs, f, opt.start, opt.t, opt.samples, opt.seed);
    } else if (opt.estimator == "killed") {
        est = dspec::mc_killed_semigroup(fs, target, f, opt.start, opt.t, opt.samples, opt.seed);
    } else if (opt.estimator == "hitting") {
        est = dspec::mc_hitting_laplace(fs, target, opt.start, opt.samples, opt.seed);
    } else if (opt.estimator == "fk") {
        const Eigen::VectorXd W = Eigen::VectorXd::Constant(fs.n(), opt.w_const);
        est = dspec::mc_feynman_kac_potential(fs, target, W, f, opt.start, opt.t, opt.samples,
                                              opt.seed);
    } else {
        throw dspec::ConfigError("unknown estimator \"" + opt.estimator + "\"");
    }

    json out;
    out["mean"] = est.mean;
    out["std_error"] = est.std_error;
    out["n"] = est.n_samples;
    out["seed"] = est.seed;
    emit(opt, out.dump() + "\n");
    return kExitOk;
}

int cmd_perturb(const Options& opt) {
    require_json_format(opt, "perturb");
    const auto g = load_source(opt);
    const auto fs = dspec::assemble(g);
    if (opt.pert_file.empty()) throw dspec::ConfigError("perturb needs --pert <file>");
    const auto cfg = dspec::load_perturbation_file(opt.pert_file, fs.n());
    const auto pert = dspec::make_perturbation(fs, cfg.plus, cfg.minus, cfg.alpha);
    if (!pert.admissible && !cfg.override_admissibility)
        throw dspec::InadmissiblePerturbation("c_alpha(mu_-) = " +
                                              std::to_string(pert.kato.c_alpha) + " is not < 1/2");

    json out;
    out["c_alpha"] = pert.kato.c_alpha;
    out["admissible"] = pert.admissible;
    bool pass = true;

    if (opt.check == "domination") {
        Eigen::VectorXd f = Eigen::VectorXd::Ones(fs.n());
        if (!opt.f_set.empty()) {
            f.setZero();
            for (int x : dspec::VertexSet(opt.f_set)) f[x] = 1.0;
        }
        const auto rep =
            dspec::domination_check(fs, dspec::VertexSet(opt.set_b), pert, f, opt.t);
        out["max_violation"] = rep.max_violation;
        out["pass"] = rep.pass;
        pass = rep.pass;
    } else if (opt.check == "bound") {
        const auto rep = dspec::perturbed_bound_check(fs, dspec::VertexSet(opt.set_b),
                                                      dspec::VertexSet(opt.set_a), pert, opt.t);
        out["lhs"] = rep.lhs;
        out["C"] = rep.constant;
        out["rhs_prob"] = rep.sup_prob_sqrt;
        out["pass"] = rep.pass;
        pass = rep.pass;
    } else if (opt.check == "l1") {
        out["norm"] = dspec::l1_bound_check(fs, pert, opt.t);
        out["t"] = opt.t;
    } else if (opt.check == "persson") {
        const auto sweep = dspec::perturbed_persson(fs, pert, make_exhaustion(opt, g));
        out["sweep"] = sweep_summary(sweep);
        if (!opt.output.empty()) dspec::atomic_write_file(opt.output, sweep_csv(sweep));
        std::cout << out.dump() << "\n";
        return kExitOk;
    } else {
        throw dspec::ConfigError("unknown check \"" + opt.check + "\"");
    }

    emit(opt, out.dump() + "\n");
    return pass ? kExitOk : kExitBoundViolated;
}

int cmd_build(const Options& opt) {
    const auto g = load_source(opt);
    emit(opt, dspec::graph_to_json(g));
    return kExitOk;
}

void resolve_threads(const Options& opt) {
    int count = opt.threads;
    if (const char* env = std::getenv("DSPEC_THREADS")) {
        try {
            count = std::stoi(env);
        } catch (...) {
            throw dspec::ConfigError("DSPEC_THREADS must be an integer");
        }
    }
    dspec::set_threads(count);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for Dirichlet forms on finite weighted graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--input", opt.input, "Graph or model JSON file");
    app.add_option("--preset", opt.preset, "Built-in graph: path, lattice, fractional-1d, confining");
    app.add_option("--output", opt.output, "Output file (stdout when omitted)");
    app.add_option("--format", opt.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", opt.seed, "Root seed for Monte Carlo estimators");
    app.add_option("--threads", opt.threads, "Worker threads (DSPEC_THREADS overrides)");
    app.add_option("--n", opt.n, "Preset size");
    app.add_option("--weight", opt.weight, "Preset edge weight");
    app.add_option("--alpha", opt.alpha, "Stability index for fractional presets");
    app.add_option("--p", opt.growth, "Growth power of the confining preset");
    app.add_option("--center", opt.center, "Center vertex of the confining preset");
    app.add_option("--extent", opt.extent, "Lattice extent per axis")->delimiter(',');

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the generator");
    spectrum->add_option("--k", opt.k, "Bottom k eigenvalues (0 = full dense spectrum)");

    auto* persson = app.add_subcommand("persson", "Ground values over a nested exhaustion");
    persson->add_option("--root", opt.root, "Ball center (defaults to n/2)");
    persson->add_option("--max-radius", opt.max_radius, "Largest ball radius");
    persson->add_option("--sets", opt.explicit_sets,
                        "Explicit exhaustion, e.g. \"4;3,4,5;2,3,4,5,6\"");

    auto* bounds = app.add_subcommand("bounds", "Semigroup-difference norm estimate");
    bounds->add_option("--B", opt.set_b, "Removed set")->delimiter(',')->required();
    bounds->add_option("--A", opt.set_a, "Observation set")->delimiter(',');
    bounds->add_option("--t", opt.t, "Time");

    auto* capacity = app.add_subcommand("capacity", "Equilibrium potential and capacity");
    capacity->add_option("--B", opt.set_b, "Target set")->delimiter(',')->required();

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimators for the jump process");
    mc->add_option("--estimator", opt.estimator, "semigroup | killed | hitting | fk")
        ->check(CLI::IsMember({"semigroup", "killed", "hitting", "fk"}));
    mc->add_option("--samples", opt.samples, "Sample count");
    mc->add_option("--t", opt.t, "Time");
    mc->add_option("--start", opt.start, "Start vertex");
    mc->add_option("--target-set", opt.set_b, "Target set B")->delimiter(',');
    mc->add_option("--f-set", opt.f_set, "Indicator support of the payoff (default: all ones)")
        ->delimiter(',');
    mc->add_option("--w-const", opt.w_const, "Constant potential for the fk estimator");

    auto* perturb = app.add_subcommand("perturb", "Schroedinger-type perturbation checks");
    perturb->add_option("--pert", opt.pert_file, "Perturbation JSON file")->required();
    perturb->add_option("--check", opt.check, "domination | bound | l1 | persson")
        ->check(CLI::IsMember({"domination", "bound", "l1", "persson"}));
    perturb->add_option("--B", opt.set_b, "Removed set")->delimiter(',');
    perturb->add_option("--A", opt.set_a, "Observation set")->delimiter(',');
    perturb->add_option("--t", opt.t, "Time");
    perturb->add_option("--root", opt.root, "Ball center for persson");
    perturb->add_option("--max-radius", opt.max_radius, "Largest ball radius for persson");

    auto* build = app.add_subcommand("build", "Validate a source and write graph JSON");
    (void)build;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        resolve_threads(opt);
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (persson->parsed()) return cmd_persson(opt);
        if (bounds->parsed()) return cmd_bounds(opt);
        if (capacity->parsed()) return cmd_capacity(opt);
        if (mc->parsed()) return cmd_mc(opt);
        if (perturb->parsed()) return cmd_perturb(opt);
        if (build->parsed()) return cmd_build(opt);
        std::cerr << "no subcommand\n";
        return kExitValidation;
    } catch (const dspec::ConvergenceFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const dspec::SingularSystem& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const dspec::Error& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
