#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rainbowpack/errors.hpp"
#include "rainbowpack/otr.hpp"
#include "support.hpp"

#include <random>

using namespace rainbowpack;
using namespace rainbowpack::otr;

namespace {

ColoredGraph k2(int colors, long long weight, long long budget) {
    ColoredGraph cg;
    cg.num_nodes = 2;
    cg.num_colors = colors;
    ColoredEdge e;
    e.u = 0;
    e.v = 1;
    e.colors.push_back({0, weight});
    cg.edges.push_back(e);
    cg.budget = budget;
    return cg;
}

} // namespace

TEST_CASE("reduction with one color adds no knock-out nodes") {
    auto cg = k2(1, 0, 0);
    auto red = reduce_to_conjoining(cg);
    CHECK(red.inst.num_nodes == 2);
    CHECK(red.inst.num_classes == 2); // the copy class and the empty knock-out class
    REQUIRE(red.inst.pattern.size() == 1);
    CHECK(red.inst.pattern[0].a == 0);
    CHECK(red.inst.pattern[0].b == 0); // one self-loop per copy
    CHECK(red.inst.edges.size() == 1);
}

TEST_CASE("knock-out gadget for a single node with four colors") {
    ColoredGraph cg;
    cg.num_nodes = 1;
    cg.num_colors = 4;
    auto red = reduce_to_conjoining(cg);
    CHECK(red.inst.num_nodes == 4 + 3); // four copies plus J(v) of size 3
    int knockouts = 0;
    for (std::size_t e = 0; e < red.inst.edges.size(); ++e)
        if (red.edge_orig_edge[e] < 0) ++knockouts;
    CHECK(knockouts == 12); // J(v) fully joined to all copies
    CHECK(red.inst.pattern.size() == 4);
}

TEST_CASE("reduced node count follows the construction") {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 30; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 8, 3, 3);
        auto red = reduce_to_conjoining(cg);
        CHECK(red.inst.num_nodes ==
              cg.num_colors * cg.num_nodes + (cg.num_colors - 1) * cg.num_nodes);
        CHECK(static_cast<int>(red.inst.pattern.size()) == cg.num_colors);
    }
}

TEST_CASE("single edge with one color and zero budget") {
    auto cg = k2(1, 0, 0);
    auto sol = solve(cg, 3);
    REQUIRE(sol.has_value());
    CHECK(sol->weight == 0);
    REQUIRE(sol->matching.size() == 1);
    CHECK(sol->matching[0].first == 0);
    CHECK(sol->matching[0].second == 0);
    CHECK(validate_rainbow(cg, *sol));
}

TEST_CASE("an unreachable color makes the instance infeasible") {
    auto cg = k2(2, 0, 1000); // color 1 never appears on any edge
    CHECK_FALSE(decide(cg, 3).has_value());
    CHECK_FALSE(solve(cg, 3).has_value());
    CHECK_FALSE(solve_via_conjoining(cg, 3).has_value());
}

TEST_CASE("path with a unique perfect matching") {
    // nodes 0-1-2-3, edges (0,1), (1,2), (2,3); only {01, 23} is perfect
    ColoredGraph cg;
    cg.num_nodes = 4;
    cg.num_colors = 2;
    cg.edges.push_back({0, 1, {{0, 1}}});
    cg.edges.push_back({1, 2, {{0, 0}, {1, 0}}});
    cg.edges.push_back({2, 3, {{1, 2}}});
    cg.budget = 100;
    auto sol = brute_force(cg);
    REQUIRE(sol.has_value());
    CHECK(sol->weight == 3); // outer edges, colors 0 and 1
    auto fast = solve(cg, 9);
    REQUIRE(fast.has_value());
    CHECK(fast->weight == 3);
}

TEST_CASE("empty graph with no colors is vacuously feasible") {
    ColoredGraph cg;
    auto sol = brute_force(cg);
    REQUIRE(sol.has_value());
    CHECK(sol->weight == 0);
    auto fast = solve(cg, 1);
    REQUIRE(fast.has_value());
    CHECK(fast->weight == 0);
}

TEST_CASE("solve matches brute force on random colored graphs") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 200; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 10, 3, 3);
        auto expected = brute_force(cg);
        auto got = solve(cg, 100 + it);
        CHECK(expected.has_value() == got.has_value());
        if (expected && got) {
            CHECK(got->weight == expected->weight);
            CHECK(validate_rainbow(cg, *got));
        }
    }
}

TEST_CASE("decisions are exact at the budget boundary") {
    std::mt19937_64 rng(20250808);
    int checked = 0;
    for (int it = 0; it < 200 && checked < 60; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 8, 3, 3);
        cg.budget = 1000000;
        auto best = brute_force(cg);
        if (!best) continue;
        ++checked;
        auto at = cg;
        at.budget = best->weight;
        auto w = decide(at, 111 + it);
        REQUIRE(w.has_value());
        CHECK(*w == best->weight);
        if (best->weight > 0) {
            auto below = cg;
            below.budget = best->weight - 1;
            CHECK_FALSE(decide(below, 222 + it).has_value());
        }
        auto sol = solve(at, 333 + it);
        REQUIRE(sol.has_value());
        CHECK(validate_rainbow(at, *sol));
    }
    CHECK(checked >= 40);
}

TEST_CASE("reduction preserves feasibility and optimum") {
    std::mt19937_64 rng(59);
    for (int it = 0; it < 60; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 6, 3, 3);
        auto direct = brute_force(cg);
        auto red = reduce_to_conjoining(cg);
        auto reduced = conjoining::brute_force_conjoining(red.inst, 32);
        CHECK(direct.has_value() == reduced.has_value());
        if (direct && reduced) CHECK(direct->weight == reduced->weight);
    }
}

TEST_CASE("in a reduced matching exactly one copy of each node is matched outside its knock-out set") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 30; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 6, 3, 3);
        auto red = reduce_to_conjoining(cg);
        auto sol = conjoining::brute_force_conjoining(red.inst, 32);
        if (!sol) continue;
        std::vector<int> outside(cg.num_nodes, 0);
        for (int e : sol->matching_edges) {
            if (red.edge_orig_edge[e] < 0) continue;
            outside[cg.edges[red.edge_orig_edge[e]].u]++;
            outside[cg.edges[red.edge_orig_edge[e]].v]++;
        }
        for (int v = 0; v < cg.num_nodes; ++v) CHECK(outside[v] == 1);
    }
}

TEST_CASE("the direct engine and the conjoining pipeline agree") {
    std::mt19937_64 rng(67);
    for (int it = 0; it < 60; ++it) {
        auto cg = testsupport::random_colored_graph(rng, 8, 3, 3);
        auto fast = solve(cg, 1000 + it);
        auto slow = solve_via_conjoining(cg, 2000 + it);
        CHECK(fast.has_value() == slow.has_value());
        if (fast && slow) {
            CHECK(fast->weight == slow->weight);
            CHECK(validate_rainbow(cg, *fast));
            CHECK(validate_rainbow(cg, *slow));
        }
    }
}

TEST_CASE("reduction dump is stable") {
    auto cg = k2(2, 3, 10);
    cg.edges[0].colors.push_back({1, 1});
    auto red = reduce_to_conjoining(cg);
    std::string expected = "nodes 6 classes 3\n"
                           "node 0 class 0\n"
                           "node 1 class 0\n"
                           "node 2 class 1\n"
                           "node 3 class 1\n"
                           "node 4 class 2\n"
                           "node 5 class 2\n"
                           "edges 6\n"
                           "edge 0 1 3\n"
                           "edge 2 3 1\n"
                           "edge 0 4 0\n"
                           "edge 2 4 0\n"
                           "edge 1 5 0\n"
                           "edge 3 5 0\n"
                           "pattern 2\n"
                           "pedge 0 0\n"
                           "pedge 1 1\n"
                           "budget 10\n";
    CHECK(dump_reduction(red) == expected);
}
