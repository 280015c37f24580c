#include "qdcolor/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdcolor {

void pullback_to_angles(std::span<const double> angles, std::span<const double> dpsi,
                        std::span<double> dangles, std::vector<double>& sines,
                        std::vector<double>& cosines) {
    const std::size_t n = angles.size();
    sines.resize(n);
    cosines.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        sines[k] = std::sin(angles[k]);
        cosines[k] = std::cos(angles[k]);
    }
    // tail = sum_{m>k} dpsi_m * d(psi_m)/d(phi_k) / (S_k cos phi_k), built from the back.
    double tail = dpsi[n];
    for (std::size_t k = n; k-- > 0;) {
        if (k + 1 < n) tail = dpsi[k + 1] * cosines[k + 1] + sines[k + 1] * tail;
        dangles[k] = -dpsi[k] * sines[k] + cosines[k] * tail;
    }
    // Scale by the prefix sine products S_k.
    double prefix = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        dangles[k] *= prefix;
        prefix *= sines[k];
    }
}

double grad_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                  const CostParams& params, std::span<const double> edge_noise,
                  std::span<double> grad, GradientWorkspace& ws) {
    validate(params);
    if (edge_noise.size() != g.num_edges()) throw std::invalid_argument("edge noise size mismatch");
    if (grad.size() != state.params().size()) throw std::invalid_argument("gradient size mismatch");
    if (ops.dim != state.num_colors()) throw std::invalid_argument("operator dimension mismatch");

    const std::size_t c = static_cast<std::size_t>(state.num_colors());
    const std::size_t table = state.num_nodes() * c;
    ws.psi.resize(table);
    ws.probs.resize(table);
    ws.field.assign(table, 0.0);
    ws.dpsi.resize(c);

    state.amplitudes(ws.psi);
    for (std::size_t k = 0; k < table; ++k) ws.probs[k] = ws.psi[k] * ws.psi[k];

    const double t = params.t;
    const double e_initial = detail::initial_from_amplitudes(ws.psi, state, ops);
    const double e_weight = detail::weight_from_probabilities(ws.probs, params.gamma);

    double e_final = 0.0;
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double coupling = 1.0 + edge_noise[e];
        const double* pu = ws.probs.data() + edges[e].u * c;
        const double* pv = ws.probs.data() + edges[e].v * c;
        double* fu = ws.field.data() + edges[e].u * c;
        double* fv = ws.field.data() + edges[e].v * c;
        double dot = 0.0;
        for (std::size_t m = 0; m < c; ++m) {
            dot += pu[m] * pv[m];
            fu[m] += coupling * pv[m];
            fv[m] += coupling * pu[m];
        }
        e_final += coupling * dot;
    }

    const double w_initial = -2.0 * (1.0 - t);
    const double w_final = 2.0 * t;
    const double w_weight = 2.0 * t * params.gamma;
    for (NodeId i = 0; i < state.num_nodes(); ++i) {
        if (state.is_fixed(i)) continue;
        const std::span<const double> psi(ws.psi.data() + i * c, c);
        const double* p = ws.probs.data() + i * c;
        const double* field = ws.field.data() + i * c;
        ops.apply_lx(psi, ws.dpsi);
        for (std::size_t m = 0; m < c; ++m) {
            const double log_p = std::log(std::max(p[m], kLogClamp));
            ws.dpsi[m] = w_initial * ws.dpsi[m] + psi[m] * (w_final * field[m] + w_weight * (log_p + 1.0));
        }
        pullback_to_angles(state.node_angles(i), ws.dpsi, grad.subspan(state.offset(i), c - 1),
                           ws.sines, ws.cosines);
    }

    return (1.0 - t) * e_initial + t * (e_final + e_weight);
}

double grad_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                  const CostParams& params, Rng& rng, std::span<double> grad,
                  GradientWorkspace& ws) {
    const auto noise = draw_edge_noise(g.num_edges(), params.h, rng);
    return grad_total(state, g, ops, params, noise, grad, ws);
}

GradientCheckReport check_gradient(const AngleState& state, const Graph& g,
                                   const AngularMomentumOps& ops, const CostParams& params,
                                   double step, double tol, Rng& rng) {
    if (!(step >= 1e-7 && step <= 1e-3)) throw std::invalid_argument("step must lie in [1e-7, 1e-3]");
    const auto noise = draw_edge_noise(g.num_edges(), params.h, rng);
    const std::size_t n = state.params().size();

    GradientCheckReport report;
    report.tolerance = tol;
    report.analytic.resize(n);
    report.numeric.resize(n);
    report.rel_error.resize(n);
    report.clamp_affected.assign(n, false);

    GradientWorkspace ws;
    grad_total(state, g, ops, params, noise, report.analytic, ws);

    const std::size_t c = static_cast<std::size_t>(state.num_colors());
    const bool log_active = params.t > 0.0 && params.gamma > 0.0;
    for (NodeId i = 0; i < state.num_nodes() && log_active; ++i) {
        if (state.is_fixed(i)) continue;
        const double* p = ws.probs.data() + i * c;
        if (std::any_of(p, p + c, [](double x) { return x < kLogClamp; })) {
            std::fill_n(report.clamp_affected.begin() + static_cast<std::ptrdiff_t>(state.offset(i)),
                        c - 1, true);
        }
    }

    AngleState probe = state;
    for (std::size_t k = 0; k < n; ++k) {
        const double saved = probe.params()[k];
        probe.params()[k] = saved + step;
        const double up = energy_total(probe, g, ops, params, noise);
        probe.params()[k] = saved - step;
        const double down = energy_total(probe, g, ops, params, noise);
        probe.params()[k] = saved;
        report.numeric[k] = (up - down) / (2.0 * step);

        const double a = report.analytic[k];
        const double b = report.numeric[k];
        report.rel_error[k] = std::abs(a - b) / std::max({std::abs(a), std::abs(b), kGradientCheckFloor});
        if (report.clamp_affected[k]) {
            ++report.num_clamp_affected;
        } else if (report.rel_error[k] > report.max_rel_error) {
            report.max_rel_error = report.rel_error[k];
            report.worst_index = k;
        }
    }
    report.passed = report.max_rel_error < tol;
    return report;
}

}  // namespace qdcolor
