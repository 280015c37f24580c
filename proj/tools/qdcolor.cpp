// qdcolor: graph coloring with qudit product states.
//
//   qdcolor info      --graph FILE
//   qdcolor solve     --graph FILE --colors C [--method qdlqa|qdgd] [...]
//   qdcolor sweep     --graph FILE --from C0 --to C1 [--full] [...]
//   qdcolor gradcheck --graph FILE --colors C [--samples N] [...]
//
// Exit codes: 0 success, 1 invalid configuration, 2 I/O or parse failure,
// 3 gradient check failed.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "qdcolor/config.hpp"
#include "qdcolor/gradient.hpp"
#include "qdcolor/harness.hpp"

namespace {

using namespace qdcolor;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitCheckFailed = 3;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Options registered as strings keyed by config key, so flags and config
// files go through the same parser.
struct FlagSet {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, bool> switches;
    std::map<std::string, CLI::Option*> switch_options;

    void option(CLI::App& app, const std::string& key, const std::string& flag, const std::string& help) {
        options[key] = app.add_option(flag, values[key], help);
    }
    void toggle(CLI::App& app, const std::string& key, const std::string& flag, const std::string& help) {
        switch_options[key] = app.add_flag(flag, switches[key], help);
    }

    ConfigOverrides collect() const {
        ConfigOverrides out;
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) out.emplace_back(key, values.at(key));
        }
        for (const auto& [key, opt] : switch_options) {
            if (opt->count() > 0) out.emplace_back(key, switches.at(key) ? "true" : "false");
        }
        return out;
    }
};

void add_graph_options(CLI::App& app, FlagSet& flags) {
    flags.option(app, "graph", "-g,--graph", "Graph file (.col DIMACS or whitespace edge list)");
    flags.option(app, "format", "--format", "auto | dimacs | edgelist");
}

void add_solver_options(CLI::App& app, FlagSet& flags) {
    flags.option(app, "method", "-m,--method", "qdlqa | qdgd");
    flags.option(app, "colors", "-c,--colors", "Number of colors");
    flags.option(app, "steps", "--steps", "N_steps");
    flags.option(app, "gamma", "--gamma", "Entropy weight");
    flags.option(app, "alpha", "--alpha", "Gradient steps per time step: N or exp:RATE:CAP");
    flags.option(app, "eta", "--eta", "Adam learning rate");
    flags.option(app, "f", "--f", "QdLQA initial angle noise");
    flags.option(app, "f_tilde", "--f-tilde", "QdGD initial amplitude scale");
    flags.option(app, "h", "--h", "Coupling noise cap");
    flags.option(app, "runs", "-r,--runs", "Independent runs");
    flags.option(app, "patience", "--patience", "QdGD early-stop patience");
    flags.option(app, "fix", "--fix", "maxdegree | degreeone | none | NODE");
    flags.option(app, "seed", "-s,--seed", "Master seed");
    flags.toggle(app, "inclusive_endpoint", "--inclusive-endpoint", "Also optimize at t = 1 (QdLQA)");
    flags.option(app, "workers", "-j,--workers", "Worker threads (default $QDCOLOR_WORKERS or 1)");
    flags.option(app, "stats", "-o,--stats", "Write statistics JSON here (default stdout)");
    flags.option(app, "trajectory", "--trajectory", "Write per-step E_Potts mean/std CSV here");
    flags.option(app, "histogram", "--histogram", "Write energy histogram CSV here");
    flags.option(app, "coloring", "--coloring", "Write best coloring here");
    flags.option(app, "verbosity", "-v,--verbosity", "0 quiet, 1 per-run lines");
}

ConfigOverrides environment_defaults() {
    ConfigOverrides out;
    if (const char* w = std::getenv("QDCOLOR_WORKERS"); w != nullptr && *w != '\0') {
        out.emplace_back("workers", w);
    }
    return out;
}

RunConfig resolve(const std::string& config_path, const FlagSet& flags) {
    ConfigOverrides file_entries = environment_defaults();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open config file " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        auto entries = parse_config_text(text.str());
        file_entries.insert(file_entries.end(), entries.begin(), entries.end());
    }
    RunConfig config = load_config(file_entries, flags.collect());
    for (const auto& w : config.warnings) std::cerr << "warning: " << w << '\n';
    if (config.graph_path.empty()) throw ConfigError("no input graph given (--graph)");
    return config;
}

Graph load(const RunConfig& config) {
    try {
        return load_graph(config.graph_path, config.format);
    } catch (const ParseError& e) {
        throw IoError(config.graph_path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
}

template <typename Fn>
void write_to(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    fn(out);
    if (!out) throw IoError("failed writing " + path);
}

nlohmann::json graph_json(const Graph& g) {
    return {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}};
}

// Early-stopped runs hold their last values so every run shares one grid.
std::vector<RunRecord> align_trajectories(const std::vector<RunRecord>& records) {
    std::vector<RunRecord> aligned = records;
    const RunRecord* longest = &records.front();
    for (const auto& r : records) {
        if (r.trajectory.size() > longest->trajectory.size()) longest = &r;
    }
    for (auto& r : aligned) {
        if (r.trajectory.empty()) continue;
        const TrajectoryPoint last = r.trajectory.back();
        for (std::size_t s = r.trajectory.size(); s < longest->trajectory.size(); ++s) {
            TrajectoryPoint p = last;
            p.step = longest->trajectory[s].step;
            p.t = longest->trajectory[s].t;
            r.trajectory.push_back(p);
        }
    }
    return aligned;
}

void write_batch_outputs(const RunConfig& config, const Graph& g, const BatchStats& stats) {
    if (!config.trajectory_path.empty()) {
        const auto aligned = align_trajectories(stats.records);
        const auto steps = trajectory_stats(aligned, TrajectoryQuantity::Potts);
        write_to(config.trajectory_path, [&](std::ostream& out) { write_trajectory_csv(out, steps); });
    }
    if (!config.histogram_path.empty()) {
        write_to(config.histogram_path, [&](std::ostream& out) { write_histogram_csv(out, stats); });
    }
    if (!config.coloring_path.empty()) {
        write_to(config.coloring_path,
                 [&](std::ostream& out) { write_coloring(out, g, stats.best_record().best_coloring); });
    }
}

BatchOptions batch_options(const RunConfig& config) {
    return {config.workers, !config.trajectory_path.empty()};
}

void log_runs(const RunConfig& config, const BatchStats& stats) {
    if (config.verbosity < 1) return;
    for (const auto& r : stats.records) {
        std::cerr << "run " << r.run_index << ": best " << r.best_energy << " after " << r.steps_executed
                  << " steps\n";
    }
}

int cmd_info(const RunConfig& config) {
    const Graph g = load(config);
    std::cout << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n"
              << "density " << std::setprecision(4) << 100.0 * g.density() << "%\n"
              << "max degree " << g.max_degree() << " (node " << g.original_id(g.j_max()) << ")\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& config) {
    const Graph g = load(config);
    const BatchStats stats = run_batch(g, config.hp, batch_options(config));
    log_runs(config, stats);

    nlohmann::json doc = to_json(stats, config.timing);
    doc["config"] = to_json(config);
    doc["graph"] = graph_json(g);
    write_to(config.stats_path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    write_batch_outputs(config, g, stats);
    if (!config.stats_path.empty() && config.stats_path != "-") {
        std::cout << "best " << stats.best_overall << " found in " << stats.n_min << "/" << stats.num_runs
                  << " runs\n";
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& config) {
    const Graph g = load(config);
    const int lo = config.sweep_min != 0 ? config.sweep_min : config.hp.num_colors;
    const int hi = config.sweep_max != 0 ? config.sweep_max : lo;
    std::vector<int> colors;
    for (int c = lo; c <= hi; ++c) colors.push_back(c);
    const SweepResult sweep = sweep_colors(g, config.hp, colors, batch_options(config), config.sweep_full);

    nlohmann::json batches = nlohmann::json::object();
    for (const auto& [c, stats] : sweep.batches) {
        log_runs(config, stats);
        batches[std::to_string(c)] = to_json(stats, config.timing);
        std::cerr << "c=" << c << ": best " << stats.best_overall << " (" << stats.n_min << "/"
                  << stats.num_runs << ")\n";
    }
    nlohmann::json doc{{"config", to_json(config)},
                       {"graph", graph_json(g)},
                       {"colors", colors},
                       {"chi_upper", sweep.chi_upper ? nlohmann::json(*sweep.chi_upper) : nlohmann::json()},
                       {"batches", std::move(batches)}};
    write_to(config.stats_path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    if (!sweep.batches.empty()) {
        const auto& chosen = sweep.chi_upper ? sweep.batches.at(*sweep.chi_upper) : sweep.batches.rbegin()->second;
        write_batch_outputs(config, g, chosen);
    }
    return kExitOk;
}

struct GradcheckArgs {
    int samples = 10;
    double step = 1e-5;
    double tol = 1e-4;
    double t = -1.0;  // negative: random per sample
};

int cmd_gradcheck(const RunConfig& config, const GradcheckArgs& args) {
    const Graph g = load(config);
    const auto& hp = config.hp;
    const auto ops = build_ops(hp.num_colors);
    Rng rng(hp.master_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    std::size_t flagged = 0;
    for (int s = 0; s < args.samples; ++s) {
        AngleState state(g.num_nodes(), hp.num_colors, select_fixed_node(g, hp.fix));
        for (double& x : state.params()) x = angle(rng);
        const double t = args.t >= 0.0 ? args.t : unit(rng);
        const CostParams params{hp.gamma, hp.h, t};
        const auto report = check_gradient(state, g, ops, params, args.step, args.tol, rng);
        worst = std::max(worst, report.max_rel_error);
        flagged += report.num_clamp_affected;
        if (config.verbosity > 0) {
            std::cout << "sample " << s << " t=" << t << " max rel error " << report.max_rel_error << '\n';
        }
    }
    const bool ok = worst < args.tol;
    std::cout << (ok ? "PASS" : "FAIL") << ": max relative error " << worst << " over " << args.samples
              << " samples (tol " << args.tol << ", " << flagged << " clamp-affected components skipped)\n";
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph coloring with qudit product states (local quantum annealing and gradient descent)"};
    app.require_subcommand(1);
    // "-h" stays free for the coupling noise option below.
    app.set_help_flag("--help", "Print this help message and exit");
    std::string config_path;

    FlagSet info_flags;
    auto* info = app.add_subcommand("info", "Print graph statistics");
    add_graph_options(*info, info_flags);

    FlagSet solve_flags;
    auto* solve = app.add_subcommand("solve", "Run a batch and write statistics");
    solve->add_option("--config", config_path, "key = value config file");
    add_graph_options(*solve, solve_flags);
    add_solver_options(*solve, solve_flags);
    solve_flags.toggle(*solve, "timing", "--timing,!--no-timing", "Include wall-clock times in the JSON");

    FlagSet sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Increase the color count until a conflict-free coloring appears");
    sweep->add_option("--config", config_path, "key = value config file");
    add_graph_options(*sweep, sweep_flags);
    add_solver_options(*sweep, sweep_flags);
    sweep_flags.option(*sweep, "sweep_min", "--from", "Smallest color count");
    sweep_flags.option(*sweep, "sweep_max", "--to", "Largest color count");
    sweep_flags.toggle(*sweep, "sweep_full", "--full", "Run every color count even after a solution");
    sweep_flags.toggle(*sweep, "timing", "--timing,!--no-timing", "Include wall-clock times in the JSON");

    FlagSet grad_flags;
    GradcheckArgs grad_args;
    auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic and finite-difference gradients");
    add_graph_options(*gradcheck, grad_flags);
    grad_flags.option(*gradcheck, "colors", "-c,--colors", "Number of colors");
    grad_flags.option(*gradcheck, "gamma", "--gamma", "Entropy weight");
    grad_flags.option(*gradcheck, "h", "--h", "Coupling noise cap");
    grad_flags.option(*gradcheck, "seed", "-s,--seed", "Seed for states and noise");
    grad_flags.option(*gradcheck, "fix", "--fix", "maxdegree | degreeone | none | NODE");
    grad_flags.option(*gradcheck, "verbosity", "-v,--verbosity", "1 prints every sample");
    gradcheck->add_option("--samples", grad_args.samples, "Random (state, t) points")->check(CLI::PositiveNumber);
    gradcheck->add_option("--step", grad_args.step, "Central-difference step")->check(CLI::Range(1e-7, 1e-3));
    gradcheck->add_option("--tol", grad_args.tol, "Relative error tolerance")->check(CLI::PositiveNumber);
    gradcheck->add_option("--t", grad_args.t, "Fixed annealing time (default random)")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (info->parsed()) return cmd_info(resolve("", info_flags));
        if (solve->parsed()) return cmd_solve(resolve(config_path, solve_flags));
        if (sweep->parsed()) return cmd_sweep(resolve(config_path, sweep_flags));
        if (gradcheck->parsed()) return cmd_gradcheck(resolve("", grad_flags), grad_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitConfig;
}
