#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdcolor/graph.hpp"
#include "qdcolor/qudit_state.hpp"

namespace qdcolor {

// sigma_i in [0, c) per node.
using ColorAssignment = std::vector<int>;

struct CostParams {
    double gamma = 1.0;  // weight of the entropy term
    double h = 0.0;      // coupling noise cap, h_ij ~ U[0, h)
    double t = 0.0;      // annealing time in [0, 1]
};

// Probabilities below this are clamped before taking a logarithm in gradients.
inline constexpr double kLogClamp = 1e-12;

void validate(const CostParams& params);

// One h_ij per edge. With h == 0 no random numbers are consumed.
std::vector<double> draw_edge_noise(std::size_t num_edges, double h, Rng& rng);

// argmax of each row of a num_nodes x c probability table, lowest index on ties.
ColorAssignment argmax_colors(std::span<const double> probs, int num_colors);
ColorAssignment extract_coloring(const AngleState& state);

// Number of monochromatic edges.
std::size_t potts_energy(const Graph& g, const ColorAssignment& coloring);

// -sum over free nodes of <psi_i|Lx|psi_i>.
double energy_initial(const AngleState& state, const AngularMomentumOps& ops);

// sum over edges of (1 + h_ij) p_i . p_j. The Rng overload draws fresh h_ij.
double energy_final(const AngleState& state, const Graph& g, std::span<const double> edge_noise);
double energy_final(const AngleState& state, const Graph& g, const CostParams& params, Rng& rng);

// gamma * sum_i p_i . log p_i with 0 log 0 = 0; includes the fixed node.
double energy_weight(const AngleState& state, const CostParams& params);

// (1 - t) E_I + t (E_F + E_W)
double energy_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                    const CostParams& params, std::span<const double> edge_noise);
double energy_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                    const CostParams& params, Rng& rng);

namespace detail {
// Kernels over precomputed num_nodes x c tables.
double initial_from_amplitudes(std::span<const double> psi, const AngleState& state,
                               const AngularMomentumOps& ops);
double final_from_probabilities(std::span<const double> probs, const Graph& g, int num_colors,
                                std::span<const double> edge_noise);
double weight_from_probabilities(std::span<const double> probs, double gamma);
}  // namespace detail

}  // namespace qdcolor
