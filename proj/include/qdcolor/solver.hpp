#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qdcolor/energy.hpp"
#include "qdcolor/graph.hpp"

namespace qdcolor {

enum class Method { QdLQA, QdGD };

std::string to_string(Method m);
Method parse_method(const std::string& name);

// Number of gradient steps per annealing time step.
struct AlphaSchedule {
    enum class Kind { Constant, Exponential };
    Kind kind = Kind::Constant;
    int steps = 1;      // Constant
    double rate = 2.0;  // Exponential: min(round(exp(rate * t)), cap)
    int cap = 7;

    static AlphaSchedule constant(int steps) { return {Kind::Constant, steps, 0.0, 0}; }
    static AlphaSchedule exponential(double rate, int cap) { return {Kind::Exponential, 1, rate, cap}; }

    friend bool operator==(const AlphaSchedule&, const AlphaSchedule&) = default;
};

int alpha_at(const AlphaSchedule& schedule, double t);
// "3" or "exp:RATE:CAP"
std::string to_string(const AlphaSchedule& schedule);
AlphaSchedule parse_alpha_schedule(const std::string& text);

struct Hyperparameters {
    Method method = Method::QdLQA;
    int num_colors = 3;
    int num_steps = 1000;
    double gamma = 1.0;
    AlphaSchedule alpha = AlphaSchedule::constant(1);
    double eta = 0.5;
    double f = 0.0;        // QdLQA initial angle noise
    double f_tilde = 1.0;  // QdGD initial amplitude scale
    double h = 3.0;
    int num_runs = 100;
    int patience = 100;    // QdGD only
    FixStrategy fix = FixStrategy::max_degree();
    std::uint64_t master_seed = 0;
    // Also optimize at t = 1 instead of stopping at t = 1 - 1/N_steps.
    bool inclusive_endpoint = false;

    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct TrajectoryPoint {
    std::size_t step = 0;
    double t = 0.0;
    double e_total = 0.0;  // cost at the last gradient evaluation of the step
    std::size_t e_potts = 0;
};

struct RunRecord {
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    std::size_t best_energy = std::numeric_limits<std::size_t>::max();
    ColorAssignment best_coloring;
    // Outer iterations: annealing time steps for QdLQA, gradient steps for QdGD.
    std::size_t steps_executed = 0;
    std::vector<TrajectoryPoint> trajectory;
    double wall_ms = 0.0;
};

// Deterministic per-run seed derived from the master seed.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t run_index);

RunRecord run_qdlqa(const Graph& g, const Hyperparameters& hp, std::uint64_t seed,
                    bool record_trajectory = false);
RunRecord run_qdgd(const Graph& g, const Hyperparameters& hp, std::uint64_t seed,
                   bool record_trajectory = false);

// Dispatches on hp.method with the seed derived from (hp.master_seed, run_index).
RunRecord run_single(const Graph& g, const Hyperparameters& hp, std::size_t run_index,
                     bool record_trajectory = false);

}  // namespace qdcolor
