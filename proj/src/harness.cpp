#include "qdcolor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qdcolor {

const RunRecord& BatchStats::best_record() const {
    for (const auto& r : records) {
        if (r.best_energy == best_overall) return r;
    }
    throw std::logic_error("batch has no records");
}

BatchStats summarize(std::vector<RunRecord> records, std::size_t num_edges) {
    if (records.empty()) throw std::invalid_argument("cannot summarize an empty batch");
    BatchStats stats;
    stats.num_runs = records.size();
    stats.num_edges = num_edges;
    double sum = 0.0;
    double sum_steps = 0.0;
    for (const auto& r : records) {
        ++stats.histogram[r.best_energy];
        sum += static_cast<double>(r.best_energy);
        sum_steps += static_cast<double>(r.steps_executed);
    }
    const double n = static_cast<double>(records.size());
    stats.best_overall = stats.histogram.begin()->first;
    stats.n_min = stats.histogram.begin()->second;
    stats.p_min = static_cast<double>(stats.n_min) / n;
    stats.mean_best = sum / n;
    stats.mean_steps = sum_steps / n;
    double var = 0.0;
    for (const auto& r : records) {
        const double d = static_cast<double>(r.best_energy) - stats.mean_best;
        var += d * d;
    }
    stats.std_best = std::sqrt(var / n);
    stats.normalized_error =
        num_edges == 0 ? 0.0 : static_cast<double>(stats.best_overall) / static_cast<double>(num_edges);
    stats.records = std::move(records);
    return stats;
}

BatchStats run_batch(const Graph& g, const Hyperparameters& hp, const BatchOptions& options) {
    hp.validate();
    const std::size_t runs = static_cast<std::size_t>(hp.num_runs);
    std::vector<RunRecord> records(runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                records[i] = run_single(g, hp, i, options.keep_trajectories);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = runs;
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, runs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return summarize(std::move(records), g.num_edges());
}

SweepResult sweep_colors(const Graph& g, const Hyperparameters& hp, std::span<const int> colors,
                         const BatchOptions& options, bool force_full) {
    if (!std::is_sorted(colors.begin(), colors.end())) {
        throw std::invalid_argument("color range must be ascending");
    }
    SweepResult result;
    for (int c : colors) {
        Hyperparameters hp_c = hp;
        hp_c.num_colors = c;
        auto stats = run_batch(g, hp_c, options);
        const bool solved = stats.best_overall == 0;
        result.batches.emplace(c, std::move(stats));
        if (solved && !result.chi_upper) {
            result.chi_upper = c;
            if (!force_full) break;
        }
    }
    return result;
}

std::vector<StepStats> trajectory_stats(std::span<const RunRecord> records, TrajectoryQuantity quantity) {
    if (records.empty()) throw std::invalid_argument("no records");
    const auto& grid = records.front().trajectory;
    if (grid.empty()) throw std::invalid_argument("records carry no trajectories");
    for (const auto& r : records) {
        if (r.trajectory.size() != grid.size()) {
            throw std::invalid_argument("trajectories have mismatched step grids");
        }
        for (std::size_t s = 0; s < grid.size(); ++s) {
            if (r.trajectory[s].step != grid[s].step || r.trajectory[s].t != grid[s].t) {
                throw std::invalid_argument("trajectories have mismatched step grids");
            }
        }
    }
    auto value = [quantity](const TrajectoryPoint& p) {
        return quantity == TrajectoryQuantity::Total ? p.e_total : static_cast<double>(p.e_potts);
    };
    const double n = static_cast<double>(records.size());
    std::vector<StepStats> out(grid.size());
    for (std::size_t s = 0; s < grid.size(); ++s) {
        double sum = 0.0;
        for (const auto& r : records) sum += value(r.trajectory[s]);
        const double mean = sum / n;
        double var = 0.0;
        for (const auto& r : records) {
            const double d = value(r.trajectory[s]) - mean;
            var += d * d;
        }
        out[s] = {grid[s].step, grid[s].t, mean, std::sqrt(var / n)};
    }
    return out;
}

nlohmann::json to_json(const BatchStats& stats, bool include_timing) {
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [energy, count] : stats.histogram) histogram[std::to_string(energy)] = count;
    nlohmann::json per_run = nlohmann::json::array();
    for (const auto& r : stats.records) {
        nlohmann::json entry{{"run", r.run_index}, {"seed", r.seed}, {"best", r.best_energy},
                             {"steps", r.steps_executed}};
        if (include_timing) entry["wall_ms"] = r.wall_ms;
        per_run.push_back(std::move(entry));
    }
    return {
        {"runs", stats.num_runs},
        {"best_energy", stats.best_overall},
        {"n_min", stats.n_min},
        {"p_min", stats.p_min},
        {"mean_best", stats.mean_best},
        {"std_best", stats.std_best},
        {"std_convention", "population"},
        {"mean_steps", stats.mean_steps},
        {"histogram", std::move(histogram)},
        {"normalized_error", stats.normalized_error},
        {"per_run", std::move(per_run)},
    };
}

void write_trajectory_csv(std::ostream& out, std::span<const StepStats> steps) {
    out << "step,t,mean,std\n";
    out.precision(17);
    for (const auto& s : steps) out << s.step << ',' << s.t << ',' << s.mean << ',' << s.std << '\n';
}

void write_histogram_csv(std::ostream& out, const BatchStats& stats) {
    out << "energy,count\n";
    for (const auto& [energy, count] : stats.histogram) out << energy << ',' << count << '\n';
}

void write_coloring(std::ostream& out, const Graph& g, const ColorAssignment& coloring) {
    if (coloring.size() != g.num_nodes()) throw std::invalid_argument("coloring size mismatch");
    for (NodeId i = 0; i < coloring.size(); ++i) out << g.original_id(i) << ' ' << coloring[i] << '\n';
}

}  // namespace qdcolor
