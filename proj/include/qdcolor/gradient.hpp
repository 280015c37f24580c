#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdcolor/energy.hpp"

namespace qdcolor {

// Per-run scratch space; sized on first use and reused afterwards.
struct GradientWorkspace {
    std::vector<double> psi;    // num_nodes x c
    std::vector<double> probs;  // num_nodes x c
    std::vector<double> field;  // sum_j J_ij p_j per node
    std::vector<double> dpsi;   // dE/dpsi for one node
    std::vector<double> sines;
    std::vector<double> cosines;
};

// Writes dE_total/dparams into `grad` (same layout as state.params()) and
// returns E_total, both evaluated with the given h_ij.
double grad_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                  const CostParams& params, std::span<const double> edge_noise,
                  std::span<double> grad, GradientWorkspace& ws);

// Same, with a fresh h_ij draw shared by the value and the gradient.
double grad_total(const AngleState& state, const Graph& g, const AngularMomentumOps& ops,
                  const CostParams& params, Rng& rng, std::span<double> grad,
                  GradientWorkspace& ws);

// Pulls a gradient with respect to the amplitudes of one node back to its
// hyperspherical angles in O(c).
void pullback_to_angles(std::span<const double> angles, std::span<const double> dpsi,
                        std::span<double> dangles, std::vector<double>& sines,
                        std::vector<double>& cosines);

struct GradientCheckReport {
    std::vector<double> analytic;
    std::vector<double> numeric;
    std::vector<double> rel_error;
    std::vector<bool> clamp_affected;  // node has some p_m below kLogClamp
    double max_rel_error = 0.0;        // over components not clamp-affected
    std::size_t worst_index = 0;
    std::size_t num_clamp_affected = 0;
    double tolerance = 0.0;
    bool passed = false;
};

// |a - n| / max(|a|, |n|, kGradientCheckFloor)
inline constexpr double kGradientCheckFloor = 1e-3;

// Central differences against the analytic gradient with one frozen h_ij draw
// taken from `rng`. step must lie in [1e-7, 1e-3].
GradientCheckReport check_gradient(const AngleState& state, const Graph& g,
                                   const AngularMomentumOps& ops, const CostParams& params,
                                   double step, double tol, Rng& rng);

}  // namespace qdcolor
