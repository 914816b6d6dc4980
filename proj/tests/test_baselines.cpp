#include <random>

#include <catch_amalgamated.hpp>

#include "slotmatch/baselines.hpp"

using namespace slotmatch;

namespace {

std::vector<SlotId> make_slots(int n) {
    std::vector<SlotId> out;
    for (int i = 0; i < n; ++i) out.push_back(SlotId{"b", i});
    return out;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

TEST_CASE("bm takes the heaviest incident tag per slot") {
    auto g = graph_from_weights({"t0", "t1"}, make_slots(3),
                                {{0.9, 0.2, kNaN}, {0.5, 0.8, kNaN}});
    auto a = allocate_bm(g);
    CHECK(a.assignment == std::vector<int>{0, 1, kUnassigned});
    CHECK(a.counts == std::vector<int>{1, 1});

    // equal weights: lower tag index
    auto tie = allocate_bm(graph_from_weights({"t0", "t1"}, make_slots(1), {{0.5}, {0.5}}));
    CHECK(tie.assignment == std::vector<int>{0});
}

TEST_CASE("bm has no quota") {
    auto g = graph_from_weights({"t0", "t1"}, make_slots(4),
                                {{0.9, 0.9, 0.9, 0.9}, {0.1, 0.1, 0.1, 0.1}});
    auto a = allocate_bm(g);
    CHECK(a.counts == std::vector<int>{4, 0});
    CHECK(a.matched_tags() == 1);
}

TEST_CASE("mda takes the highest-degree incident tag") {
    // t1 has degree 3, t0 degree 2; every covered slot goes to t1 where incident
    auto g = graph_from_weights({"t0", "t1"}, make_slots(3),
                                {{0.9, 0.9, kNaN}, {0.1, 0.1, 0.1}});
    auto a = allocate_mda(g);
    CHECK(a.assignment == std::vector<int>{1, 1, 1});

    // equal degree: lower tag index
    auto tie = allocate_mda(graph_from_weights({"t0", "t1"}, make_slots(2),
                                               {{0.1, 0.2}, {0.9, 0.8}}));
    CHECK(tie.assignment == std::vector<int>{0, 0});
}

TEST_CASE("tsrt and ra assign every covered slot along an edge") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> w(3, std::vector<double>(5));
        for (auto& row : w)
            for (auto& v : row) v = unit(rng);
        auto g = prune(graph_from_weights({"t0", "t1", "t2"}, make_slots(5), w), {0.0});
        std::vector<double> infl(5);
        for (auto& v : infl) v = unit(rng);
        for (const auto& a : {allocate_tsrt(g, infl, trial), allocate_random(g, trial)}) {
            for (int s = 0; s < 5; ++s) {
                std::size_t degree = 0;
                for (const auto& e : g.edges) degree += e.slot == s;
                if (degree == 0) {
                    REQUIRE(a.assignment[s] == kUnassigned);
                } else {
                    REQUIRE(a.assignment[s] != kUnassigned);
                    REQUIRE(g.has_edge(a.assignment[s], s));
                }
            }
        }
    }
}

TEST_CASE("single-option slots do not consume randomness") {
    auto g = graph_from_weights({"t0"}, make_slots(3), {{0.5, 0.6, 0.7}});
    std::vector<double> infl{0.3, 0.2, 0.1};
    auto a = allocate_tsrt(g, infl, 1);
    auto b = allocate_tsrt(g, infl, 999);
    CHECK(a.assignment == b.assignment);
    CHECK(allocate_random(g, 1).assignment == allocate_random(g, 999).assignment);
    CHECK_THROWS_AS(allocate_tsrt(g, {0.1}, 0), ValidationError);
}

TEST_CASE("random tag picks are roughly uniform") {
    auto g = graph_from_weights({"t0", "t1"}, make_slots(1), {{0.5}, {0.5}});
    int first = 0;
    const int trials = 4000;
    for (int seed = 0; seed < trials; ++seed)
        first += allocate_random(g, seed).assignment[0] == 0;
    const double frac = static_cast<double>(first) / trials;
    CHECK(frac > 0.46);
    CHECK(frac < 0.54);
}

TEST_CASE("oracle finds the exact optimum") {
    auto g = graph_from_weights({"t0", "t1"}, make_slots(2), {{5.0, 4.0}, {4.5, 1.0}});
    double value = 0.0;
    auto a = oracle_optimal(g, {1, 1}, &value);
    CHECK(a.assignment == std::vector<int>{1, 0});  // 4.5 + 4.0 beats 5.0 + 1.0
    CHECK_THAT(value, Catch::Matchers::WithinAbs(8.5, 1e-12));

    // with room for two on t0 the heavy tag takes both slots
    double v2 = 0.0;
    oracle_optimal(g, {2, 1}, &v2);
    CHECK_THAT(v2, Catch::Matchers::WithinAbs(9.0, 1e-12));
}

TEST_CASE("oracle handles forced edges") {
    auto g = graph_from_weights({"t0", "t1"}, make_slots(2), {{5.0, 4.0}, {4.5, 1.0}});
    CHECK_THAT(oracle_value_with_edge(g, {1, 1}, 0, 0), Catch::Matchers::WithinAbs(6.0, 1e-12));
    CHECK_THAT(oracle_value_with_edge(g, {1, 1}, 1, 0), Catch::Matchers::WithinAbs(8.5, 1e-12));
    auto h = prune(graph_from_weights({"t0", "t1"}, make_slots(2), {{5.0, 4.0}, {1.0, 1.2}}),
                   {1.0});
    REQUIRE(h.edges.size() == 1);
    CHECK(oracle_value_with_edge(h, {1, 1}, 1, 0) == -1.0);  // edge no longer exists
}

TEST_CASE("oracle guards instance size") {
    auto g = graph_from_weights({"t0"}, make_slots(kOracleMaxSlots + 1),
                                {std::vector<double>(kOracleMaxSlots + 1, 0.5)});
    CHECK_THROWS_AS(oracle_optimal(g, {1}), ValidationError);
    auto h = graph_from_weights({"t0"}, make_slots(1), {{0.5}});
    CHECK_THROWS_AS(oracle_optimal(h, {1, 1}), ValidationError);
}

TEST_CASE("oracle never loses to ombm on random small graphs") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<double>> w(2, std::vector<double>(5));
        for (auto& row : w)
            for (auto& v : row) v = unit(rng);
        auto g = prune(graph_from_weights({"t0", "t1"}, make_slots(5), w),
                       {unit(rng) * 2.0 - 1.0});
        const std::vector<int> bounds{2, 2};
        double opt = 0.0;
        oracle_optimal(g, bounds, &opt);
        const double got = allocation_weight(g, ombm_allocate(g, bounds));
        REQUIRE(opt >= got - 1e-9);
    }
}
