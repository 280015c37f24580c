#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qdcolor/graph.hpp"

namespace qdcolor {

using Rng = std::mt19937_64;

// Dense row-major square matrix, only used where a full operator is wanted
// (tests, diagnostics). Hot paths use the tridiagonal form directly.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<double> data;

    explicit DenseMatrix(std::size_t n = 0) : dim(n), data(n * n, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

// Spin-l operators with l = (c-1)/2 in the Lz eigenbasis ordered by
// ascending m, so basis index k corresponds to m = k - l and to color k.
struct AngularMomentumOps {
    int dim = 0;
    double l = 0.0;
    std::vector<double> lz_diag;       // -l, ..., +l
    std::vector<double> lx_offdiag;    // <m+1|Lx|m>, size dim-1

    // out = Lx * psi
    void apply_lx(std::span<const double> psi, std::span<double> out) const;
    double lx_expectation(std::span<const double> psi) const;

    DenseMatrix lx() const;
    DenseMatrix lz() const;
};

AngularMomentumOps build_ops(int num_colors);

// Ladder operators built from their matrix elements on |l, m>.
DenseMatrix raising_operator(int num_colors);
DenseMatrix lowering_operator(int num_colors);

// Hyperspherical map: component k < c-1 is sin(phi_0)...sin(phi_{k-1}) cos(phi_k),
// the last component is the product of all sines.
void spherical_to_amplitudes(std::span<const double> angles, std::span<double> out);
std::vector<double> spherical_to_amplitudes(std::span<const double> angles);

// Inverse of the map above for a unit vector. Exact round trip for vectors
// with non-negative leading components; once the running sine product drops
// below 1e-14 the remaining angles are 0. Throws std::invalid_argument when
// |psi| differs from 1 by more than 1e-9.
std::vector<double> amplitudes_to_angles(std::span<const double> psi);

// Eigenvector of Lx for eigenvalue +l with non-negative components:
// psi_k = sqrt(binom(c-1, k)) / 2^l.
std::vector<double> lx_ground_state(int num_colors);

// Flat parameter vector over the free nodes. A fixed node, if any, is one-hot
// on color 0 and owns no angles.
class AngleState {
public:
    AngleState() = default;
    AngleState(std::size_t num_nodes, int num_colors, std::optional<NodeId> fixed_node);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    int num_colors() const noexcept { return num_colors_; }
    std::size_t angles_per_node() const noexcept { return static_cast<std::size_t>(num_colors_ - 1); }
    std::size_t num_free_nodes() const noexcept { return num_nodes_ - (fixed_node_ ? 1 : 0); }
    const std::optional<NodeId>& fixed_node() const noexcept { return fixed_node_; }
    bool is_fixed(NodeId i) const noexcept { return fixed_node_ && *fixed_node_ == i; }

    // Position of node i's first angle in params(); i must be free.
    std::size_t offset(NodeId i) const noexcept {
        const std::size_t slot = (fixed_node_ && i > *fixed_node_) ? i - 1 : i;
        return slot * angles_per_node();
    }

    std::span<double> node_angles(NodeId i) { return {params_.data() + offset(i), angles_per_node()}; }
    std::span<const double> node_angles(NodeId i) const {
        return {params_.data() + offset(i), angles_per_node()};
    }

    std::vector<double>& params() noexcept { return params_; }
    const std::vector<double>& params() const noexcept { return params_; }

    // Row i of the num_nodes x c output holds psi_i.
    void amplitudes(std::span<double> out) const;
    std::vector<double> amplitudes() const;
    // p_i = psi_i squared componentwise.
    std::vector<double> probabilities() const;

private:
    std::size_t num_nodes_ = 0;
    int num_colors_ = 0;
    std::optional<NodeId> fixed_node_;
    std::vector<double> params_;
};

// Every free node starts in the Lx ground state with its angles shifted by
// i.i.d. uniform noise in [-f, f).
AngleState init_qdlqa_state(const Graph& g, int num_colors, double f,
                            const FixStrategy& fix, Rng& rng);

// Every free node draws c amplitudes uniform in [0, f_tilde), normalized.
AngleState init_qdgd_state(const Graph& g, int num_colors, double f_tilde,
                           const FixStrategy& fix, Rng& rng);

}  // namespace qdcolor
