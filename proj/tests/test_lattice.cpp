#include <doctest.h>

#include <bit>
#include <cmath>

#include "peg/errors.hpp"
#include "peg/escape_room.hpp"
#include "peg/lattice.hpp"
#include "peg/rng.hpp"
#include "peg/text_formats.hpp"

using namespace peg;

namespace {

Scenario plant() {
    return parse_scenario(read_file(std::string(PEG_DATA_DIR) + "/plant.scenario"));
}

Plan plan_of(std::vector<std::string> steps) {
    Plan p;
    p.steps = std::move(steps);
    return p;
}

Plan random_plan(Rng& rng) {
    std::vector<std::string> steps;
    const std::size_t n = rng.bounded(6);
    for (std::size_t i = 0; i < n; ++i) {
        steps.push_back("a" + std::to_string(rng.bounded(8)));
    }
    return plan_of(std::move(steps));
}

}  // namespace

TEST_CASE("action distance is the Jaccard distance on action sets") {
    CHECK(action_distance(plan_of({"a", "b"}), plan_of({"a", "b"})) == 0.0);
    CHECK(action_distance(plan_of({"a"}), plan_of({"b"})) == 1.0);
    CHECK(action_distance(plan_of({"a", "b", "c"}), plan_of({"a", "b", "d"})) ==
          doctest::Approx(0.5));
    CHECK(action_distance(plan_of({}), plan_of({})) == 0.0);
    CHECK(action_distance(plan_of({}), plan_of({"a"})) == 1.0);
}

TEST_CASE("action distance is a bounded metric on action sets") {
    Rng rng(6);
    for (int round = 0; round < 300; ++round) {
        const Plan a = random_plan(rng);
        const Plan b = random_plan(rng);
        const Plan c = random_plan(rng);
        const double ab = action_distance(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(ab == action_distance(b, a));
        CHECK(action_distance(a, c) <= ab + action_distance(b, c) + 1e-12);
    }
}

TEST_CASE("cost distance squares and normalizes the optimal-cost gap") {
    const Model m1 = parse_model("init: p\ngoal: r\naction go\n  pre: p\n  add: r\n  cost: 10\n");
    const Model m2 = parse_model("init: p\ngoal: r\naction go\n  pre: p\n  add: r\n  cost: 14\n");
    CHECK(cost_distance_sq(m1, m1) == 0.0);
    CHECK(cost_distance_sq(m1, m2, 16.0) == doctest::Approx(1.0));
}

TEST_CASE("spatial features measure clamped bounding-box overshoot") {
    SpatialContext ctx;
    ctx.width = 10;
    ctx.height = 10;
    ctx.start_x = 3;
    ctx.start_y = 4;
    ctx.coords = {{"A", {3, 4}}, {"B", {5, 4}}, {"C", {4, 4}}};

    // Nothing explained yet: the start cell is the reference box.
    const auto first = spatial_features(ctx, {}, "A");
    CHECK(first == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});

    const auto overshoot = spatial_features(ctx, {"A"}, "B");
    CHECK(overshoot[2] == doctest::Approx(0.2));  // x_max
    CHECK(overshoot[0] == 0.0);
    CHECK(overshoot[1] == 0.0);
    CHECK(overshoot[3] == 0.0);

    // Inside the explained bounding box: all zero.
    const auto inside = spatial_features(ctx, {"A", "B"}, "C");
    CHECK(inside == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});

    CHECK_THROWS_AS(spatial_features(ctx, {}, "Z"), UnknownContingencyError);
}

TEST_CASE("rho is the inner product and is linear in the weights") {
    FeatureVector f;
    f[5] = 0.5;
    CHECK(rho(WeightVector::zeros(), f) == 0.0);

    WeightVector one_hot = WeightVector::zeros();
    one_hot.values[5] = 1.0;
    CHECK(rho(one_hot, f) == 0.5);

    Rng rng(9);
    for (int round = 0; round < 100; ++round) {
        WeightVector w1 = WeightVector::zeros();
        WeightVector w2 = WeightVector::zeros();
        FeatureVector psi;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            w1.values[i] = rng.unit() * 4 - 2;
            w2.values[i] = rng.unit() * 4 - 2;
            psi[i] = rng.unit();
        }
        const double alpha = rng.unit() * 3;
        WeightVector scaled = w1;
        for (auto& v : scaled.values) v *= alpha;
        CHECK(rho(scaled, psi) == doctest::Approx(alpha * rho(w1, psi)).epsilon(1e-12));
        WeightVector sum = w1;
        for (std::size_t i = 0; i < kFeatureCount; ++i) sum.values[i] += w2.values[i];
        CHECK(rho(sum, psi) == doctest::Approx(rho(w1, psi) + rho(w2, psi)).epsilon(1e-12));
    }

    WeightVector short_w;
    short_w.values = {1.0, 2.0};
    CHECK_THROWS_AS(rho(short_w, f), LengthMismatchError);
}

TEST_CASE("rho against a table of weights equals the per-term sum") {
    const WeightVector w = WeightVector::of({0.75, 0.81, 0.79, 0.87, -0.02, 1.0});
    FeatureVector psi;
    psi.values = {0.1, 0.0, 0.3, 0.0, 0.25, 0.5};
    double by_hand = 0.0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) by_hand += w.values[i] * psi[i];
    CHECK(rho(w, psi) == doctest::Approx(by_hand).epsilon(1e-15));
}

TEST_CASE("lattice enumerates the full subset space") {
    const auto scenario = plant();
    const auto compiled = compile_scenario(scenario);
    const auto mdp = build_scenario_mdp(scenario, compiled);
    REQUIRE(mdp.size() == 4);  // four dangers in the fixture
    CHECK(mdp.state_count() == 16);

    // All marked cells: seven contingencies, 2^7 states.
    const auto all_marked = compile_scenario(scenario, LatticeScope::all_marked);
    const auto full = build_scenario_mdp(scenario, all_marked);
    CHECK(full.size() == 7);
    CHECK(full.state_count() == 128);

    // n = 0 and n = 3 edge counts.
    const auto problem = compiled.problem();
    const auto empty = ExplanationMdp::build(problem, {});
    CHECK(empty.state_count() == 1);
    CHECK(empty.goal_mask() == 0);

    const auto all_changes = compiled.explanation_changes();
    std::vector<FeatureChange> three(all_changes.begin(), all_changes.begin() + 3);
    const auto small = ExplanationMdp::build(problem, three);
    CHECK(small.state_count() == 8);
    std::size_t edges = 0;
    for (std::uint32_t mask = 0; mask < small.state_count(); ++mask) {
        edges += small.size() - std::popcount(mask);
    }
    CHECK(edges == 12);

    CHECK_THROWS_AS(ExplanationMdp::build(problem, compiled.explanation_changes(),
                                          std::nullopt, 2),
                    LatticeTooLargeError);
}

TEST_CASE("lattice features are finite and caches match recomputation") {
    const auto scenario = plant();
    const auto compiled = compile_scenario(scenario);
    const auto mdp = build_scenario_mdp(scenario, compiled);
    Rng rng(23);
    for (int round = 0; round < 10; ++round) {
        const std::uint32_t mask = rng.bounded(mdp.state_count());
        const Model m = mdp.state_model(mask);
        const auto plan = optimal_plan(m);
        if (plan) {
            CHECK(mdp.state_plan(mask) == *plan);
            CHECK(mdp.state_cost(mask) == plan->total_cost);
        } else {
            CHECK(!mdp.state_solvable(mask));
        }
        for (std::size_t i = 0; i < mdp.size(); ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            for (double v : mdp.edge_features(mask, i).values) {
                CHECK(std::isfinite(v));
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("safe-cell confirmations are plan no-ops in the marked lattice") {
    const auto scenario = plant();
    const auto compiled = compile_scenario(scenario, LatticeScope::all_marked);
    const auto mdp = build_scenario_mdp(scenario, compiled);
    // B, D, E are safe in the fixture: explaining them first changes nothing.
    for (const char safe : {'B', 'D', 'E'}) {
        const std::size_t i = mdp.change_index(std::string(1, safe));
        CHECK(mdp.edge_features(0, i).action_distance() == 0.0);
        CHECK(mdp.edge_features(0, i).cost_sq_distance() == 0.0);
    }
}

TEST_CASE("weight normalization divides by the maximum magnitude") {
    WeightVector w = WeightVector::of({0.75, 0.81, 0.79, 0.87, -0.02, -2.0});
    const auto norm = w.normalized();
    CHECK(norm[5] == doctest::Approx(-1.0));
    CHECK(norm[0] == doctest::Approx(0.375));
    CHECK(WeightVector::zeros().normalized() ==
          std::vector<double>(kFeatureCount, 0.0));
}
