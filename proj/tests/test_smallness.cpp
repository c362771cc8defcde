#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rainbowpack/smallness.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace rainbowpack;
using namespace rainbowpack::smallness;

namespace {

Instance six_items() {
    return parse_instance(
        R"({"dimension":1,"capacity":["1"],"vectors":[["0.1"],["0.15"],["0.2"],["0.3"],["0.4"],["0.9"]]})");
}

bool is_three_incompatible(const Instance& inst, const std::vector<int>& large, Mode mode) {
    std::vector<char> is_large(inst.n(), 0);
    for (int i : large) is_large[i] = 1;
    for (const auto& t : enumerate_fit_triples(inst, mode))
        if (is_large[t.idx[0]] && is_large[t.idx[1]] && is_large[t.idx[2]]) return false;
    return true;
}

} // namespace

TEST_CASE("six item instance has exactly the ten fitting triples below 0.9") {
    auto inst = six_items();
    auto triples = enumerate_fit_triples(inst, Mode::pack);
    CHECK(triples.size() == 10);
    for (const auto& t : triples) {
        CHECK(t.idx[2] <= 4); // nothing fits with the 0.9 item
        CHECK(t.idx[0] < t.idx[1]);
        CHECK(t.idx[1] < t.idx[2]);
    }
    // lexicographic order
    for (std::size_t i = 1; i < triples.size(); ++i)
        CHECK(triples[i - 1].idx < triples[i].idx);
}

TEST_CASE("three big items give no fitting triple") {
    Instance inst;
    inst.dimension = 1;
    inst.capacity = {Rational(1)};
    inst.vectors = {{Rational(1, 2)}, {Rational(3, 5)}, {Rational(7, 10)}};
    CHECK(enumerate_fit_triples(inst, Mode::pack).empty());
}

TEST_CASE("fewer than three items give no triples") {
    Instance inst;
    inst.dimension = 1;
    inst.capacity = {Rational(1)};
    inst.vectors = {{Rational(1, 10)}, {Rational(1, 10)}};
    CHECK(enumerate_fit_triples(inst, Mode::pack).empty());
}

TEST_CASE("hitting set of the six item instance is the three smallest items") {
    auto inst = six_items();
    auto triples = enumerate_fit_triples(inst, Mode::pack);
    auto result = min_hitting_set_3(triples, inst.n());
    REQUIRE(result.set.has_value());
    CHECK(*result.set == std::vector<int>{0, 1, 2});
    // brute force confirms no hitting set of size two suffices
    auto brute = testsupport::brute_min_hitting_set(triples, inst.n(), 2);
    CHECK_FALSE(brute.has_value());
}

TEST_CASE("empty triple list yields the empty hitting set") {
    auto result = min_hitting_set_3({}, 5);
    REQUIRE(result.set.has_value());
    CHECK(result.set->empty());
}

TEST_CASE("single triple with budget one picks the lowest index") {
    std::vector<FitTriple> triples = {{{2, 5, 7}}};
    auto result = min_hitting_set_3(triples, 1);
    REQUIRE(result.set.has_value());
    CHECK(*result.set == std::vector<int>{2});
}

TEST_CASE("hitting set respects the budget") {
    // two disjoint triples need two elements
    std::vector<FitTriple> triples = {{{0, 1, 2}}, {{3, 4, 5}}};
    CHECK_FALSE(min_hitting_set_3(triples, 1).set.has_value());
    CHECK(min_hitting_set_3(triples, 2).set.has_value());
}

TEST_CASE("split of the six item instance") {
    auto inst = six_items();
    auto result = split_small_large(inst, Mode::pack);
    CHECK(result.small == std::vector<int>{0, 1, 2});
    CHECK(result.large == std::vector<int>{3, 4, 5});
    CHECK(result.k == 3);
}

TEST_CASE("all-large instance splits trivially") {
    Instance inst;
    inst.dimension = 1;
    inst.capacity = {Rational(1)};
    inst.vectors = {{Rational(1, 2)}, {Rational(3, 5)}, {Rational(7, 10)}};
    auto result = split_small_large(inst, Mode::pack);
    CHECK(result.k == 0);
    CHECK(result.large.size() == 3);
}

TEST_CASE("split matches brute force minimum on random instances") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        auto inst = testsupport::random_instance(rng, 10, 2, 10);
        auto triples = enumerate_fit_triples(inst, Mode::pack);
        auto result = split_small_large(inst, Mode::pack);
        auto brute = testsupport::brute_min_hitting_set(triples, inst.n(), inst.n());
        REQUIRE(brute.has_value());
        CHECK(result.k == static_cast<int>(brute->size()));
        CHECK(is_three_incompatible(inst, result.large, Mode::pack));
    }
}

TEST_CASE("cover mode split leaves triples that all cover") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 40; ++it) {
        auto inst = testsupport::random_cover_instance(rng, 8, 2, 8);
        auto result = split_small_large(inst, Mode::cover);
        // no failing triple may survive among the large vectors
        CHECK(is_three_incompatible(inst, result.large, Mode::cover));
        auto triples = enumerate_fit_triples(inst, Mode::cover);
        auto brute = testsupport::brute_min_hitting_set(triples, inst.n(), inst.n());
        CHECK(result.k == static_cast<int>(brute->size()));
    }
}

TEST_CASE("branching explores at most 3^k leaves") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 40; ++it) {
        auto inst = testsupport::random_instance(rng, 10, 2, 10);
        auto result = split_small_large(inst, Mode::pack);
        long long bound = 1;
        for (int i = 0; i < result.k; ++i) bound *= 3;
        CHECK(result.stats.leaves_final <= bound);
    }
}
