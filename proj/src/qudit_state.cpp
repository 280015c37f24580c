#include "qdcolor/qudit_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qdcolor {

void AngularMomentumOps::apply_lx(std::span<const double> psi, std::span<double> out) const {
    const std::size_t n = static_cast<std::size_t>(dim);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        if (k > 0) acc += lx_offdiag[k - 1] * psi[k - 1];
        if (k + 1 < n) acc += lx_offdiag[k] * psi[k + 1];
        out[k] = acc;
    }
}

double AngularMomentumOps::lx_expectation(std::span<const double> psi) const {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(dim); ++k) {
        acc += lx_offdiag[k] * psi[k] * psi[k + 1];
    }
    return 2.0 * acc;
}

DenseMatrix AngularMomentumOps::lx() const {
    DenseMatrix m(static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < lx_offdiag.size(); ++k) {
        m(k, k + 1) = lx_offdiag[k];
        m(k + 1, k) = lx_offdiag[k];
    }
    return m;
}

DenseMatrix AngularMomentumOps::lz() const {
    DenseMatrix m(static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < lz_diag.size(); ++k) m(k, k) = lz_diag[k];
    return m;
}

AngularMomentumOps build_ops(int num_colors) {
    if (num_colors < 2) throw std::invalid_argument("colors must be >= 2");
    AngularMomentumOps ops;
    ops.dim = num_colors;
    ops.l = 0.5 * (num_colors - 1);
    ops.lz_diag.resize(static_cast<std::size_t>(num_colors));
    ops.lx_offdiag.resize(static_cast<std::size_t>(num_colors - 1));
    for (int k = 0; k < num_colors; ++k) {
        const double m = k - ops.l;
        ops.lz_diag[k] = m;
        if (k + 1 < num_colors) ops.lx_offdiag[k] = 0.5 * std::sqrt((ops.l - m) * (ops.l + m + 1.0));
    }
    return ops;
}

DenseMatrix raising_operator(int num_colors) {
    if (num_colors < 2) throw std::invalid_argument("colors must be >= 2");
    const double l = 0.5 * (num_colors - 1);
    DenseMatrix up(static_cast<std::size_t>(num_colors));
    // L+ |l,m> = sqrt((l-m)(l+m+1)) |l,m+1>
    for (int k = 0; k + 1 < num_colors; ++k) {
        const double m = k - l;
        up(k + 1, k) = std::sqrt((l - m) * (l + m + 1.0));
    }
    return up;
}

DenseMatrix lowering_operator(int num_colors) {
    if (num_colors < 2) throw std::invalid_argument("colors must be >= 2");
    const double l = 0.5 * (num_colors - 1);
    DenseMatrix down(static_cast<std::size_t>(num_colors));
    // L- |l,m> = sqrt((l+m)(l-m+1)) |l,m-1>
    for (int k = 1; k < num_colors; ++k) {
        const double m = k - l;
        down(k - 1, k) = std::sqrt((l + m) * (l - m + 1.0));
    }
    return down;
}

void spherical_to_amplitudes(std::span<const double> angles, std::span<double> out) {
    const std::size_t n = angles.size();
    double sines = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = sines * std::cos(angles[k]);
        sines *= std::sin(angles[k]);
    }
    out[n] = sines;
}

std::vector<double> spherical_to_amplitudes(std::span<const double> angles) {
    std::vector<double> out(angles.size() + 1);
    spherical_to_amplitudes(angles, out);
    return out;
}

std::vector<double> amplitudes_to_angles(std::span<const double> psi) {
    if (psi.size() < 2) throw std::invalid_argument("need at least two amplitudes");
    double norm_sq = 0.0;
    for (double x : psi) norm_sq += x * x;
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-9) {
        throw std::invalid_argument("amplitude vector is not normalized (norm " +
                                    std::to_string(std::sqrt(norm_sq)) + ")");
    }
    const std::size_t n = psi.size() - 1;
    // tail[k] = |(psi_k, ..., psi_{c-1})|
    std::vector<double> tail(psi.size() + 1, 0.0);
    for (std::size_t k = psi.size(); k-- > 0;) tail[k] = std::hypot(tail[k + 1], psi[k]);

    std::vector<double> angles(n, 0.0);
    double sines = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (sines < 1e-14) break;
        angles[k] = (k + 1 < n) ? std::atan2(tail[k + 1], psi[k]) : std::atan2(psi[k + 1], psi[k]);
        sines *= std::sin(angles[k]);
    }
    return angles;
}

std::vector<double> lx_ground_state(int num_colors) {
    if (num_colors < 2) throw std::invalid_argument("colors must be >= 2");
    const int n = num_colors - 1;
    std::vector<double> psi(static_cast<std::size_t>(num_colors));
    const double log_norm = 0.5 * n * std::numbers::ln2;
    for (int k = 0; k <= n; ++k) {
        const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        psi[k] = std::exp(0.5 * log_binom - log_norm);
    }
    return psi;
}

AngleState::AngleState(std::size_t num_nodes, int num_colors, std::optional<NodeId> fixed_node)
    : num_nodes_(num_nodes), num_colors_(num_colors), fixed_node_(fixed_node) {
    if (num_colors < 2) throw std::invalid_argument("colors must be >= 2");
    if (fixed_node && *fixed_node >= num_nodes) throw std::invalid_argument("fixed node out of range");
    params_.assign(num_free_nodes() * angles_per_node(), 0.0);
}

void AngleState::amplitudes(std::span<double> out) const {
    const std::size_t c = static_cast<std::size_t>(num_colors_);
    for (NodeId i = 0; i < num_nodes_; ++i) {
        std::span<double> row = out.subspan(i * c, c);
        if (is_fixed(i)) {
            std::fill(row.begin(), row.end(), 0.0);
            row[0] = 1.0;
        } else {
            spherical_to_amplitudes(node_angles(i), row);
        }
    }
}

std::vector<double> AngleState::amplitudes() const {
    std::vector<double> out(num_nodes_ * static_cast<std::size_t>(num_colors_));
    amplitudes(out);
    return out;
}

std::vector<double> AngleState::probabilities() const {
    auto out = amplitudes();
    for (double& x : out) x *= x;
    return out;
}

AngleState init_qdlqa_state(const Graph& g, int num_colors, double f,
                            const FixStrategy& fix, Rng& rng) {
    if (f < 0.0) throw std::invalid_argument("f must be >= 0");
    AngleState state(g.num_nodes(), num_colors, select_fixed_node(g, fix));
    const auto ground = amplitudes_to_angles(lx_ground_state(num_colors));
    std::uniform_real_distribution<double> noise(-f, f);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        if (state.is_fixed(i)) continue;
        auto angles = state.node_angles(i);
        for (std::size_t k = 0; k < angles.size(); ++k) {
            angles[k] = ground[k] + (f > 0.0 ? noise(rng) : 0.0);
        }
    }
    return state;
}

AngleState init_qdgd_state(const Graph& g, int num_colors, double f_tilde,
                           const FixStrategy& fix, Rng& rng) {
    if (!(f_tilde > 0.0)) throw std::invalid_argument("f_tilde must be > 0");
    AngleState state(g.num_nodes(), num_colors, select_fixed_node(g, fix));
    std::uniform_real_distribution<double> draw(0.0, f_tilde);
    std::vector<double> psi(static_cast<std::size_t>(num_colors));
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        if (state.is_fixed(i)) continue;
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (double& x : psi) {
                x = draw(rng);
                norm_sq += x * x;
            }
        } while (norm_sq == 0.0);
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& x : psi) x *= inv;
        const auto angles = amplitudes_to_angles(psi);
        std::copy(angles.begin(), angles.end(), state.node_angles(i).begin());
    }
    return state;
}

}  // namespace qdcolor
