#include "qdcolor/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace qdcolor {

void validate(const CostParams& params) {
    if (!(params.gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(params.h >= 0.0)) throw std::invalid_argument("h must be >= 0");
    if (!(params.t >= 0.0 && params.t <= 1.0)) throw std::invalid_argument("t must lie in [0, 1]");
}

std::vector<double> draw_edge_noise(std::size_t num_edges, double h, Rng& rng) {
    std::vector<double> noise(num_edges, 0.0);
    if (h > 0.0) {
        std::uniform_real_distribution<double> draw(0.0, h);
        for (double& x : noise) x = draw(rng);
    }
    return noise;
}

ColorAssignment argmax_colors(std::span<const double> probs, int num_colors) {
    const std::size_t c = static_cast<std::size_t>(num_colors);
    ColorAssignment colors(probs.size() / c, 0);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        const double* row = probs.data() + i * c;
        std::size_t best = 0;
        for (std::size_t m = 1; m < c; ++m) {
            if (row[m] > row[best]) best = m;
        }
        colors[i] = static_cast<int>(best);
    }
    return colors;
}

ColorAssignment extract_coloring(const AngleState& state) {
    return argmax_colors(state.probabilities(), state.num_colors());
}

std::size_t potts_energy(const Graph& g, const ColorAssignment& coloring) {
    if (coloring.size() != g.num_nodes()) throw std::invalid_argument("coloring size mismatch");
    std::size_t clashes = 0;
    for (const auto& e : g.edges()) clashes += coloring[e.u] == coloring[e.v] ? 1 : 0;
    return clashes;
}

namespace detail {

double initial_from_amplitudes(std::span<const double> psi, const AngleState& state,
                               const AngularMomentumOps& ops) {
    const std::size_t c = static_cast<std::size_t>(ops.dim);
    double acc = 0.0;
    for (NodeId i = 0; i < state.num_nodes(); ++i) {
        if (state.is_fixed(i)) continue;
        acc -= ops.lx_expectation(psi.subspan(i * c, c));
    }
    return acc;
}

double final_from_probabilities(std::span<const double> probs, const Graph& g, int num_colors,
                                std::span<const double> edge_noise) {
    const std::size_t c = static_cast<std::size_t>(num_colors);
    const auto& edges = g.edges();
    double acc = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double* pu = probs.data() + edges[e].u * c;
        const double* pv = probs.data() + edges[e].v * c;
        double dot = 0.0;
        for (std::size_t m = 0; m < c; ++m) dot += pu[m] * pv[m];
        acc += (1.0 + edge_noise[e]) * dot;
    }
    return acc;
}

double weight_from_probabilities(std::span<const double> probs, double gamma) {
    double acc = 0.0;
    for (double p : probs) {
        if (p > 0.0) acc += p * std::log(p);
    }
    return gamma * acc;
}

}  // namespace detail

double energy_initial(const AngleState& state, const AngularMomentumOps& ops) {
    if (ops.dim != state.num_colors()) throw std::invalid_argument("operator dimension mismatch");
    return detail::initial_from_amplitudes(state.amplitudes(), state, ops);
}

double energy_final(const AngleState& state, const Graph& g, std::span<const double> edge_noise) {
    if (edge_noise.size() != g.num_edges()) throw std::invalid_argument("edge noise size mismatch");
    return detail::final_from_probabilities(state.probabilities(), g, state.num_colors(), edge_noise);
}

double energy_final(const AngleState& state, const Graph& g, const CostParams& params, Rng& rng) {
    const auto noise = draw_edge_noise(g.num_edges(), params.h, rng);
    return energy_final(state, g, noise);
}

double energy_weight(const AngleState& state, const CostParams& params) {
    return detail::weight_from_probabilities(state.probabilities(), params.gamma);
}

double energy_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                    const CostParams& params, std::span<const double> edge_noise) {
    validate(params);
    if (edge_noise.size() != g.num_edges()) throw std::invalid_argument("edge noise size mismatch");
    if (ops.dim != state.num_colors()) throw std::invalid_argument("operator dimension mismatch");
    auto table = state.amplitudes();
    const double e_initial = detail::initial_from_amplitudes(table, state, ops);
    for (double& x : table) x *= x;
    const double e_final = detail::final_from_probabilities(table, g, state.num_colors(), edge_noise);
    const double e_weight = detail::weight_from_probabilities(table, params.gamma);
    return (1.0 - params.t) * e_initial + params.t * (e_final + e_weight);
}

double energy_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                    const CostParams& params, Rng& rng) {
    const auto noise = draw_edge_noise(g.num_edges(), params.h, rng);
    return energy_total(state, g, ops, params, noise);
}

}  // namespace qdcolor
