#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "json.hpp"
#include "qdcolor/solver.hpp"

namespace qdcolor {

struct BatchOptions {
    std::size_t workers = 1;
    bool keep_trajectories = false;
};

struct BatchStats {
    std::vector<RunRecord> records;  // ordered by run index
    std::size_t num_runs = 0;
    std::size_t num_edges = 0;
    std::size_t best_overall = 0;
    std::size_t n_min = 0;
    double p_min = 0.0;
    double mean_best = 0.0;
    double std_best = 0.0;  // population standard deviation
    double mean_steps = 0.0;
    std::map<std::size_t, std::size_t> histogram;  // energy -> number of runs
    double normalized_error = 0.0;                 // best_overall / |E|

    const RunRecord& best_record() const;
};

// Aggregates finished runs. Throws std::invalid_argument on an empty list.
BatchStats summarize(std::vector<RunRecord> records, std::size_t num_edges);

// hp.num_runs independent runs spread over `workers` threads. The result does
// not depend on the worker count.
BatchStats run_batch(const Graph& g, const Hyperparameters& hp, const BatchOptions& options = {});

struct SweepResult {
    std::map<int, BatchStats> batches;
    std::optional<int> chi_upper;  // smallest c whose batch reached energy 0
};

// One batch per color count in ascending order. Stops after the first c that
// reaches 0 unless force_full is set.
SweepResult sweep_colors(const Graph& g, const Hyperparameters& hp, std::span<const int> colors,
                         const BatchOptions& options = {}, bool force_full = false);

enum class TrajectoryQuantity { Total, Potts };

struct StepStats {
    std::size_t step = 0;
    double t = 0.0;
    double mean = 0.0;
    double std = 0.0;  // population
};

// Per-step mean and standard deviation across runs. Every record must carry
// a trajectory on the same (step, t) grid; throws std::invalid_argument
// otherwise.
std::vector<StepStats> trajectory_stats(std::span<const RunRecord> records, TrajectoryQuantity quantity);

nlohmann::json to_json(const BatchStats& stats, bool include_timing = true);

// Columns: step,t,mean,std
void write_trajectory_csv(std::ostream& out, std::span<const StepStats> steps);
// Columns: energy,count
void write_histogram_csv(std::ostream& out, const BatchStats& stats);
// One "node color" pair per line, original node IDs.
void write_coloring(std::ostream& out, const Graph& g, const ColorAssignment& coloring);

}  // namespace qdcolor
