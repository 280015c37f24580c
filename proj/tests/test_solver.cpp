#include "doctest.h"
#include "test_support.hpp"

#include "qdcolor/solver.hpp"

#include <algorithm>
#include <set>

using namespace qdcolor;
using namespace qdcolor::testing;
using doctest::Approx;

namespace {

Hyperparameters small_hp(Method method, int colors, int steps) {
    Hyperparameters hp;
    hp.method = method;
    hp.num_colors = colors;
    hp.num_steps = steps;
    hp.num_runs = 1;
    return hp;
}

std::size_t min_potts_on_trajectory(const RunRecord& r) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& p : r.trajectory) best = std::min(best, p.e_potts);
    return best;
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("alpha schedule") {
        CHECK(alpha_at(AlphaSchedule::constant(3), 0.7) == 3);
        const auto schedule = AlphaSchedule::exponential(2.0, 7);
        CHECK(alpha_at(schedule, 0.0) == 1);
        CHECK(alpha_at(schedule, 0.5) == 3);
        CHECK(alpha_at(schedule, 0.9) == 6);
        CHECK(alpha_at(schedule, 1.0) == 7);
        CHECK(alpha_at(AlphaSchedule::exponential(5.0, 7), 1.0) == 7);
        CHECK(parse_alpha_schedule("exp:2:7") == schedule);
        CHECK(parse_alpha_schedule(to_string(schedule)) == schedule);
        CHECK(parse_alpha_schedule("4") == AlphaSchedule::constant(4));
        for (const char* bad : {"0", "x", "exp:2", "exp:a:7", "exp:2:0", "3.5"}) {
            CHECK_THROWS_AS(parse_alpha_schedule(bad), std::invalid_argument);
        }
    }

    TEST_CASE("method names") {
        CHECK(parse_method("qdgd") == Method::QdGD);
        CHECK(to_string(Method::QdLQA) == "qdlqa");
        CHECK_THROWS_AS(parse_method("anneal"), std::invalid_argument);
    }

    TEST_CASE("hyperparameter validation") {
        Hyperparameters hp;
        CHECK_NOTHROW(hp.validate());
        auto expect = [](Hyperparameters bad, const std::string& text) {
            try {
                bad.validate();
                FAIL("expected rejection: " << text);
            } catch (const std::invalid_argument& e) {
                CHECK(std::string(e.what()) == text);
            }
        };
        Hyperparameters bad = hp;
        bad.num_colors = 1;
        expect(bad, "colors must be ≥ 2");
        bad = hp;
        bad.eta = 0.0;
        expect(bad, "eta must be > 0");
        bad = hp;
        bad.h = -1.0;
        expect(bad, "h must be ≥ 0");
        bad = hp;
        bad.method = Method::QdGD;
        bad.patience = 0;
        expect(bad, "patience must be ≥ 1");
        bad = hp;
        bad.num_steps = 0;
        expect(bad, "steps must be ≥ 1");
        CHECK_THROWS_AS(run_qdlqa(triangle(), bad, 1), std::invalid_argument);
    }

    TEST_CASE("run seeds are deterministic and distinct") {
        std::set<std::uint64_t> seen;
        for (std::size_t r = 0; r < 1000; ++r) seen.insert(derive_run_seed(42, r));
        CHECK(seen.size() == 1000);
        CHECK(derive_run_seed(42, 3) == derive_run_seed(42, 3));
        CHECK(derive_run_seed(42, 3) != derive_run_seed(43, 3));
    }

    TEST_CASE("QdLQA runs are reproducible") {
        const Graph g = load_graph(data_path("myciel4.col"));
        Hyperparameters hp = small_hp(Method::QdLQA, 4, 200);
        hp.f = 0.1;
        const auto a = run_qdlqa(g, hp, 1234, true);
        const auto b = run_qdlqa(g, hp, 1234, true);
        CHECK(a.best_energy == b.best_energy);
        CHECK(a.best_coloring == b.best_coloring);
        CHECK(a.steps_executed == b.steps_executed);
        REQUIRE(a.trajectory.size() == b.trajectory.size());
        for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
            CHECK(a.trajectory[k].e_total == b.trajectory[k].e_total);
        }
    }

    TEST_CASE("QdLQA trajectory bookkeeping") {
        const Graph g = load_graph(data_path("queen6-6.col"));
        Hyperparameters hp = small_hp(Method::QdLQA, 5, 50);  // too few colors, never solved
        const auto r = run_qdlqa(g, hp, 5, true);
        CHECK(r.steps_executed == 50);
        REQUIRE(r.trajectory.size() == 50);
        for (std::size_t s = 0; s < 50; ++s) {
            CHECK(r.trajectory[s].step == s);
            CHECK(r.trajectory[s].t == static_cast<double>(s) / 50.0);
        }
        CHECK(r.best_energy == min_potts_on_trajectory(r));
        CHECK(potts_energy(g, r.best_coloring) == r.best_energy);
        CHECK(r.best_coloring[g.j_max()] == 0);

        hp.inclusive_endpoint = true;
        const auto inclusive = run_qdlqa(g, hp, 5, true);
        CHECK(inclusive.steps_executed == 51);
        CHECK(inclusive.trajectory.back().t == 1.0);
    }

    TEST_CASE("QdLQA with one step evaluates only t = 0") {
        const Graph g = load_graph(data_path("queen5-5.col"));
        const auto r = run_qdlqa(g, small_hp(Method::QdLQA, 5, 1), 3, true);
        CHECK(r.steps_executed == 1);
        CHECK(r.trajectory.front().t == 0.0);
    }

    TEST_CASE("QdLQA stops as soon as the coloring is proper") {
        const Graph g = load_graph(data_path("queen5-5.col"));
        Hyperparameters hp = small_hp(Method::QdLQA, 5, 1000);
        const auto r = run_single(g, hp, 0, true);
        REQUIRE(r.best_energy == 0);
        CHECK(r.steps_executed < 1000);
        CHECK(r.trajectory.back().e_potts == 0);
        CHECK(r.trajectory.size() == r.steps_executed);
        for (std::size_t k = 0; k + 1 < r.trajectory.size(); ++k) CHECK(r.trajectory[k].e_potts > 0);
    }

    TEST_CASE("exponential alpha schedule runs") {
        const Graph g = load_graph(data_path("myciel4.col"));
        Hyperparameters hp = small_hp(Method::QdLQA, 5, 100);
        hp.alpha = AlphaSchedule::exponential(2.0, 7);
        hp.gamma = 0.75;
        const auto r = run_qdlqa(g, hp, 9);
        CHECK(r.best_energy == 0);
    }

    TEST_CASE("QdGD patience terminates without improvement") {
        const Graph g = load_graph(data_path("queen11-11.col"));
        Hyperparameters hp = small_hp(Method::QdGD, 11, 1000);
        hp.patience = 20;
        const auto r = run_qdgd(g, hp, 17, true);
        REQUIRE(r.best_energy > 0);
        REQUIRE(r.steps_executed < 1000);
        const auto& tr = r.trajectory;
        REQUIRE(tr.size() > 20);
        // the best was reached exactly `patience` steps before the end
        const std::size_t best_before = std::min_element(tr.begin(), tr.end() - 20, [](auto& a, auto& b) {
                                            return a.e_potts < b.e_potts;
                                        })->e_potts;
        CHECK(best_before == r.best_energy);
        for (auto it = tr.end() - 20; it != tr.end(); ++it) CHECK(it->e_potts >= r.best_energy);
        CHECK(r.best_energy == min_potts_on_trajectory(r));
    }

    TEST_CASE("QdGD respects the step cap") {
        const Graph g = load_graph(data_path("queen6-6.col"));
        Hyperparameters hp = small_hp(Method::QdGD, 4, 30);
        hp.patience = 1000;
        const auto r = run_qdgd(g, hp, 4);
        CHECK(r.steps_executed == 30);
    }

    TEST_CASE("solver never beats exhaustive search and usually matches it") {
        std::mt19937_64 rng(2024);
        int matched = 0;
        const int instances = 25;
        for (int k = 0; k < instances; ++k) {
            const Graph g = random_graph(7, 0.5, rng);
            const int c = 2 + k % 2;
            const std::size_t exact = exhaustive_min_potts(g, c);
            Hyperparameters hp = small_hp(Method::QdGD, c, 1000);
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for (std::size_t run = 0; run < 10; ++run) best = std::min(best, run_single(g, hp, run).best_energy);
            REQUIRE(best >= exact);
            matched += best == exact;
        }
        CHECK(matched >= instances * 9 / 10);
    }
}
