#include "qdcolor/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qdcolor/gradient.hpp"
#include "qdcolor/optimizer.hpp"

namespace qdcolor {

std::string to_string(Method m) { return m == Method::QdLQA ? "qdlqa" : "qdgd"; }

Method parse_method(const std::string& name) {
    if (name == "qdlqa") return Method::QdLQA;
    if (name == "qdgd") return Method::QdGD;
    throw std::invalid_argument("unknown method '" + name + "' (expected qdlqa or qdgd)");
}

int alpha_at(const AlphaSchedule& schedule, double t) {
    if (schedule.kind == AlphaSchedule::Kind::Constant) return schedule.steps;
    const auto steps = static_cast<int>(std::lround(std::exp(schedule.rate * t)));
    return std::max(1, std::min(steps, schedule.cap));
}

std::string to_string(const AlphaSchedule& schedule) {
    if (schedule.kind == AlphaSchedule::Kind::Constant) return std::to_string(schedule.steps);
    std::ostringstream out;
    out << "exp:" << schedule.rate << ':' << schedule.cap;
    return out.str();
}

AlphaSchedule parse_alpha_schedule(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("invalid alpha schedule '" + text + "'"); };
    try {
        std::size_t used = 0;
        if (text.rfind("exp:", 0) == 0) {
            const auto colon = text.find(':', 4);
            if (colon == std::string::npos) throw bad();
            const std::string rate_text = text.substr(4, colon - 4);
            const std::string cap_text = text.substr(colon + 1);
            const double rate = std::stod(rate_text, &used);
            if (used != rate_text.size()) throw bad();
            const int cap = std::stoi(cap_text, &used);
            if (used != cap_text.size() || cap < 1) throw bad();
            return AlphaSchedule::exponential(rate, cap);
        }
        const int steps = std::stoi(text, &used);
        if (used != text.size() || steps < 1) throw bad();
        return AlphaSchedule::constant(steps);
    } catch (const std::logic_error&) {
        throw bad();
    }
}

void Hyperparameters::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (num_colors < 2) fail("colors must be ≥ 2");
    if (num_steps < 1) fail("steps must be ≥ 1");
    if (num_runs < 1) fail("runs must be ≥ 1");
    if (!(gamma >= 0.0)) fail("gamma must be ≥ 0");
    if (!(eta > 0.0)) fail("eta must be > 0");
    if (!(f >= 0.0)) fail("f must be ≥ 0");
    if (!(f_tilde > 0.0)) fail("f_tilde must be > 0");
    if (!(h >= 0.0)) fail("h must be ≥ 0");
    if (method == Method::QdGD && patience < 1) fail("patience must be ≥ 1");
    if (alpha.kind == AlphaSchedule::Kind::Constant && alpha.steps < 1) fail("alpha must be ≥ 1");
    if (alpha.kind == AlphaSchedule::Kind::Exponential && alpha.cap < 1) fail("alpha cap must be ≥ 1");
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t run_index) {
    // splitmix64 finalizer over the pair
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(master_seed ^ mix(static_cast<std::uint64_t>(run_index)));
}

namespace {

using Clock = std::chrono::steady_clock;

const Hyperparameters& validated(const Hyperparameters& hp) {
    hp.validate();
    return hp;
}

// Shared per-run machinery: one state, one optimizer, one rng stream.
class RunContext {
public:
    RunContext(const Graph& g, const Hyperparameters& hp, std::uint64_t seed, bool record)
        : graph_(g), hp_(validated(hp)), ops_(build_ops(hp.num_colors)), rng_(seed), record_(record) {
        record_out_.seed = seed;
        start_ = Clock::now();
    }

    Rng& rng() { return rng_; }

    void attach(AngleState state) {
        state_ = std::move(state);
        grad_.assign(state_.params().size(), 0.0);
        adam_.emplace(state_.params().size(), hp_.eta);
    }

    double descend(double t) {
        const CostParams params{hp_.gamma, hp_.h, t};
        const double value = grad_total(state_, graph_, ops_, params, rng_, grad_, ws_);
        adam_->step(state_.params(), grad_);
        return value;
    }

    // Extracts the current coloring and returns true when it improves the best.
    bool observe(std::size_t step, double t, double e_total) {
        state_.amplitudes(ws_.psi);
        for (double& x : ws_.psi) x *= x;
        coloring_ = argmax_colors(ws_.psi, hp_.num_colors);
        const std::size_t energy = potts_energy(graph_, coloring_);
        record_out_.steps_executed = step + 1;
        if (record_) record_out_.trajectory.push_back({step, t, e_total, energy});
        if (energy < record_out_.best_energy) {
            record_out_.best_energy = energy;
            record_out_.best_coloring = coloring_;
            return true;
        }
        return false;
    }

    bool solved() const { return record_out_.best_energy == 0; }

    RunRecord finish() {
        record_out_.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
        return std::move(record_out_);
    }

private:
    const Graph& graph_;
    const Hyperparameters& hp_;
    AngularMomentumOps ops_;
    Rng rng_;
    bool record_;
    AngleState state_;
    std::vector<double> grad_;
    std::optional<Adam> adam_;
    GradientWorkspace ws_;
    ColorAssignment coloring_;
    RunRecord record_out_;
    Clock::time_point start_;
};

}  // namespace

RunRecord run_qdlqa(const Graph& g, const Hyperparameters& hp, std::uint64_t seed,
                    bool record_trajectory) {
    RunContext run(g, hp, seed, record_trajectory);
    run.attach(init_qdlqa_state(g, hp.num_colors, hp.f, hp.fix, run.rng()));

    // Integer time index avoids an extra step from accumulated rounding in t.
    const std::size_t n_steps = static_cast<std::size_t>(hp.num_steps);
    const std::size_t last = hp.inclusive_endpoint ? n_steps : n_steps - 1;
    for (std::size_t s = 0; s <= last; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(n_steps);
        const int inner = alpha_at(hp.alpha, t);
        double value = 0.0;
        for (int a = 0; a < inner; ++a) value = run.descend(t);
        run.observe(s, t, value);
        if (run.solved()) break;
    }
    return run.finish();
}

RunRecord run_qdgd(const Graph& g, const Hyperparameters& hp, std::uint64_t seed,
                   bool record_trajectory) {
    RunContext run(g, hp, seed, record_trajectory);
    run.attach(init_qdgd_state(g, hp.num_colors, hp.f_tilde, hp.fix, run.rng()));

    const std::size_t n_steps = static_cast<std::size_t>(hp.num_steps);
    int stale = 0;
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double value = run.descend(1.0);
        const double t = static_cast<double>(s + 1) / static_cast<double>(n_steps);
        stale = run.observe(s, t, value) ? 0 : stale + 1;
        if (run.solved() || stale >= hp.patience) break;
    }
    return run.finish();
}

RunRecord run_single(const Graph& g, const Hyperparameters& hp, std::size_t run_index,
                     bool record_trajectory) {
    const std::uint64_t seed = derive_run_seed(hp.master_seed, run_index);
    RunRecord record = hp.method == Method::QdLQA ? run_qdlqa(g, hp, seed, record_trajectory)
                                                  : run_qdgd(g, hp, seed, record_trajectory);
    record.run_index = run_index;
    return record;
}

}  // namespace qdcolor
