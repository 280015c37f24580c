#include "doctest.h"
#include "test_support.hpp"

#include "qdcolor/gradient.hpp"

#include <cmath>

using namespace qdcolor;
using namespace qdcolor::testing;
using doctest::Approx;

namespace {

// Independent central differences on energy_total with frozen noise.
std::vector<double> numeric_gradient(AngleState state, const Graph& g, const AngularMomentumOps& ops,
                                     const CostParams& params, const std::vector<double>& noise,
                                     double step) {
    std::vector<double> out(state.params().size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double saved = state.params()[k];
        state.params()[k] = saved + step;
        const double plus = energy_total(state, g, ops, params, noise);
        state.params()[k] = saved - step;
        const double minus = energy_total(state, g, ops, params, noise);
        state.params()[k] = saved;
        out[k] = (plus - minus) / (2 * step);
    }
    return out;
}

// Keeps every angle away from the poles so no probability is near the clamp.
AngleState interior_state(const Graph& g, int c, std::mt19937_64& rng, std::optional<NodeId> fixed) {
    AngleState s(g.num_nodes(), c, fixed);
    std::uniform_real_distribution<double> angle(0.3, 1.2);
    for (double& x : s.params()) x = angle(rng);
    return s;
}

}  // namespace

TEST_SUITE("gradient") {
    TEST_CASE("pullback matches the numeric Jacobian of the hyperspherical map") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> angle(-3.0, 3.0);
        std::normal_distribution<double> gauss;
        std::vector<double> sines, cosines;
        for (int c = 2; c <= 12; ++c) {
            std::vector<double> phi(static_cast<std::size_t>(c - 1));
            for (double& x : phi) x = angle(rng);
            std::vector<double> upstream(static_cast<std::size_t>(c));
            for (double& x : upstream) x = gauss(rng);
            std::vector<double> analytic(phi.size());
            pullback_to_angles(phi, upstream, analytic, sines, cosines);
            for (std::size_t k = 0; k < phi.size(); ++k) {
                auto plus = phi, minus = phi;
                plus[k] += 1e-6;
                minus[k] -= 1e-6;
                const auto a = spherical_to_amplitudes(plus);
                const auto b = spherical_to_amplitudes(minus);
                double numeric = 0.0;
                for (int m = 0; m < c; ++m) numeric += upstream[m] * (a[m] - b[m]) / 2e-6;
                CHECK(analytic[k] == Approx(numeric).epsilon(1e-7));
            }
        }
    }

    TEST_CASE("grad_total returns energy_total") {
        std::mt19937_64 rng(2);
        const Graph g = load_graph(data_path("myciel4.col"));
        const auto ops = build_ops(4);
        const auto s = random_state(g, 4, rng, g.j_max());
        Rng noise_rng(3);
        const auto noise = draw_edge_noise(g.num_edges(), 3.0, noise_rng);
        std::vector<double> grad(s.params().size());
        GradientWorkspace ws;
        const CostParams params{1.0, 3.0, 0.4};
        CHECK(grad_total(s, g, ops, params, noise, grad, ws) ==
              Approx(energy_total(s, g, ops, params, noise)).epsilon(1e-13));
    }

    TEST_CASE("rng overloads consume identical noise") {
        std::mt19937_64 rng(4);
        const Graph g = load_graph(data_path("queen5-5.col"));
        const auto ops = build_ops(5);
        const auto s = random_state(g, 5, rng, g.j_max());
        const CostParams params{1.0, 3.0, 0.7};
        Rng a(99), b(99);
        std::vector<double> grad(s.params().size());
        GradientWorkspace ws;
        CHECK(grad_total(s, g, ops, params, a, grad, ws) == Approx(energy_total(s, g, ops, params, b)).epsilon(1e-13));
        CHECK(a() == b());
    }

    TEST_CASE("analytic gradient agrees with central differences") {
        std::mt19937_64 rng(5);
        const Graph queen = load_graph(data_path("queen5-5.col"));
        std::vector<Graph> graphs{queen, random_graph(10, 0.4, rng), triangle()};
        for (const Graph& g : graphs) {
            for (int c : {2, 3, 5}) {
                const auto ops = build_ops(c);
                for (double t : {0.0, 0.25, 0.8, 1.0}) {
                    CAPTURE(g.num_nodes());
                    CAPTURE(c);
                    CAPTURE(t);
                    const auto s = interior_state(g, c, rng, g.j_max());
                    Rng noise_rng(rng());
                    const auto noise = draw_edge_noise(g.num_edges(), 3.0, noise_rng);
                    const CostParams params{0.8, 3.0, t};
                    std::vector<double> grad(s.params().size());
                    GradientWorkspace ws;
                    grad_total(s, g, ops, params, noise, grad, ws);
                    const auto numeric = numeric_gradient(s, g, ops, params, noise, 1e-5);
                    for (std::size_t k = 0; k < grad.size(); ++k) {
                        const double scale = std::max({std::abs(grad[k]), std::abs(numeric[k]), 1e-3});
                        REQUIRE(std::abs(grad[k] - numeric[k]) / scale < 1e-5);
                    }
                }
            }
        }
    }

    TEST_CASE("gradient at t = 0 with the ground state vanishes") {
        const Graph g = load_graph(data_path("queen5-5.col"));
        Rng rng(6);
        const auto s = init_qdlqa_state(g, 5, 0.0, FixStrategy::max_degree(), rng);
        const std::vector<double> noise(g.num_edges(), 0.0);
        std::vector<double> grad(s.params().size());
        GradientWorkspace ws;
        grad_total(s, g, build_ops(5), CostParams{1.0, 0.0, 0.0}, noise, grad, ws);
        for (double x : grad) CHECK(std::abs(x) < 1e-12);
    }

    TEST_CASE("check_gradient passes on random states and flags clamped nodes") {
        std::mt19937_64 rng(7);
        const Graph g = load_graph(data_path("queen5-5.col"));
        const auto ops = build_ops(5);
        Rng check_rng(8);
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = random_state(g, 5, rng, g.j_max());
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const auto report = check_gradient(s, g, ops, CostParams{1.0, 3.0, unit(rng)}, 1e-6, 1e-4, check_rng);
            CHECK(report.passed);
            CHECK(report.max_rel_error < 1e-4);
            CHECK(report.analytic.size() == s.params().size());
        }
        // angle pi/2 on the first coordinate zeroes color 0 for that node
        AngleState pole(g.num_nodes(), 5, g.j_max());
        for (double& x : pole.params()) x = 0.7;
        const NodeId victim = g.j_max() == 0 ? 1 : 0;
        pole.node_angles(victim)[0] = std::acos(0.0);
        const auto report = check_gradient(pole, g, ops, CostParams{1.0, 0.0, 0.5}, 1e-6, 1e-4, check_rng);
        CHECK(report.num_clamp_affected == 4);
        CHECK(report.clamp_affected[pole.offset(victim)]);
        CHECK(report.passed);
    }

    TEST_CASE("check_gradient rejects bad steps") {
        const Graph g = triangle();
        AngleState s(3, 3, std::nullopt);
        Rng rng(9);
        CHECK_THROWS_AS(check_gradient(s, g, build_ops(3), CostParams{}, 1e-2, 1e-4, rng), std::invalid_argument);
        CHECK_THROWS_AS(check_gradient(s, g, build_ops(3), CostParams{}, 1e-9, 1e-4, rng), std::invalid_argument);
    }
}
