#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rainbowpack/engine.hpp"
#include "rainbowpack/errors.hpp"
#include "rainbowpack/gf61.hpp"
#include "rainbowpack/pfaffian.hpp"
#include "support.hpp"
#include "symbolic.hpp"

#include <map>
#include <random>

using namespace rainbowpack;
using namespace rainbowpack::gf;

namespace {

using symbolic::Poly;
using symbolic::SymbolicGraph;
using symbolic::conjoining_matching_sum;
using symbolic::inclusion_exclusion_sum;
using symbolic::symbolic_pfaffian;

std::vector<std::uint64_t> random_skew(std::mt19937_64& rng, int n) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t v = rng() % kPrime;
            a[static_cast<std::size_t>(i) * n + j] = v;
            a[static_cast<std::size_t>(j) * n + i] = neg(v);
        }
    }
    return a;
}

} // namespace

TEST_CASE("pfaffian of the empty matrix is one") {
    std::vector<std::uint64_t> a;
    CHECK(pfaffian_destructive(a, 0) == 1);
}

TEST_CASE("pfaffian rejects odd order") {
    std::vector<std::uint64_t> a(9, 0);
    CHECK_THROWS_AS(pfaffian_destructive(a, 3), std::invalid_argument);
}

TEST_CASE("2x2 pfaffian is the off-diagonal entry") {
    std::uint64_t v = 12345;
    std::vector<std::uint64_t> a = {0, v, neg(v), 0};
    CHECK(pfaffian_destructive(a, 2) == v);
}

TEST_CASE("4x4 pfaffian closed form") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        auto a = random_skew(rng, 4);
        auto get = [&](int i, int j) { return a[static_cast<std::size_t>(i) * 4 + j]; };
        std::uint64_t expect =
            add(sub(mul(get(0, 1), get(2, 3)), mul(get(0, 2), get(1, 3))),
                mul(get(0, 3), get(1, 2)));
        auto copy = a;
        CHECK(pfaffian_destructive(copy, 4) == expect);
    }
}

TEST_CASE("pfaffian squared equals the determinant") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 500; ++it) {
        int n = 2 * (1 + static_cast<int>(rng() % 6)); // up to 12x12
        auto a = random_skew(rng, n);
        // sprinkle zeros to hit the pivoting paths
        for (int z = 0; z < n; ++z) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            if (i != j) {
                a[static_cast<std::size_t>(i) * n + j] = 0;
                a[static_cast<std::size_t>(j) * n + i] = 0;
            }
        }
        std::uint64_t det = testsupport::determinant_gf(a, n);
        auto copy = a;
        std::uint64_t pf = pfaffian_destructive(copy, n);
        CHECK(mul(pf, pf) == det);
    }
}

TEST_CASE("symbolic pfaffian equals the signed matching sum") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 60; ++it) {
        SymbolicGraph g;
        g.n = 2 * (1 + static_cast<int>(rng() % 3));
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (rng() % 2) g.edges.emplace_back(u, v);
        std::vector<int> rows(g.n);
        for (int i = 0; i < g.n; ++i) rows[i] = i;
        std::vector<char> alive(g.edges.size(), 1);
        Poly pf = symbolic_pfaffian(g, rows, alive);
        // empty pattern: every perfect matching is conjoining
        Poly sum = conjoining_matching_sum(g, std::vector<int>(g.n, 0), {});
        CHECK(pf == sum);
    }
}

TEST_CASE("inclusion-exclusion identity, exhaustive on two and four nodes") {
    for (int n : {2, 4}) {
        std::vector<std::pair<int, int>> all_edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
        const int m = static_cast<int>(all_edges.size());

        // all class assignments into up to 3 classes
        std::vector<std::vector<int>> classings;
        std::vector<int> cls(n, 0);
        std::function<void(int, int)> enumerate_cls = [&](int i, int used) {
            if (i == n) {
                classings.push_back(cls);
                return;
            }
            for (int c = 0; c <= std::min(used, 2); ++c) {
                cls[i] = c;
                enumerate_cls(i + 1, std::max(used, c + 1));
            }
        };
        enumerate_cls(0, 0);

        for (std::uint32_t emask = 0; emask < (1u << m); ++emask) {
            SymbolicGraph g;
            g.n = n;
            for (int e = 0; e < m; ++e)
                if ((emask >> e) & 1) g.edges.push_back(all_edges[e]);
            for (const auto& classing : classings) {
                int classes = 1 + *std::max_element(classing.begin(), classing.end());
                std::vector<std::pair<int, int>> pairs;
                for (int a = 0; a < classes; ++a)
                    for (int b = a; b < classes; ++b) pairs.emplace_back(a, b);
                // pattern subsets of size at most 2
                for (std::size_t p1 = 0; p1 <= pairs.size(); ++p1) {
                    for (std::size_t p2 = p1; p2 <= pairs.size(); ++p2) {
                        std::vector<std::pair<int, int>> pattern;
                        if (p1 < pairs.size()) pattern.push_back(pairs[p1]);
                        if (p2 < pairs.size() && p2 != p1) pattern.push_back(pairs[p2]);
                        Poly lhs = inclusion_exclusion_sum(g, classing, pattern);
                        Poly rhs = conjoining_matching_sum(g, classing, pattern);
                        REQUIRE(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("inclusion-exclusion identity, sampled on six nodes") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 400; ++it) {
        SymbolicGraph g;
        g.n = 6;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                if (rng() % 2) g.edges.emplace_back(u, v);
        std::vector<int> classing(6);
        for (auto& c : classing) c = static_cast<int>(rng() % 3);
        std::vector<std::pair<int, int>> pattern;
        int want = static_cast<int>(rng() % 3);
        for (int p = 0; p < want; ++p)
            pattern.emplace_back(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
        std::sort(pattern.begin(), pattern.end(),
                  [](auto a, auto b) { return std::minmax(a.first, a.second) <
                                              std::minmax(b.first, b.second); });
        pattern.erase(std::unique(pattern.begin(), pattern.end(),
                                  [](auto a, auto b) {
                                      return std::minmax(a.first, a.second) ==
                                             std::minmax(b.first, b.second);
                                  }),
                      pattern.end());
        Poly lhs = inclusion_exclusion_sum(g, classing, pattern);
        Poly rhs = conjoining_matching_sum(g, classing, pattern);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("decision table handles weights through shift and gcd") {
    SolveOptions opts;
    // Single edge of weight 5: the only perfect matching weighs 5.
    std::vector<alg::Term> terms = {{0, 1, 5, -1}};
    alg::MatchingTable table(2, terms, 0, 123, std::nullopt, opts);
    CHECK(table.degree() == 0); // uniform weights need one point
    auto w = table.query(0, 0, 5);
    REQUIRE(w.has_value());
    CHECK(*w == 5);
    CHECK_FALSE(table.query(0, 0, 4).has_value());
}

TEST_CASE("decision table finds the minimum over mixed weights") {
    SolveOptions opts;
    // Path on 4 nodes: matchings {0-1, 2-3} (weight 7) and {0-2, 1-3} missing;
    // plus the crossing pair {0-3, 1-2} (weight 3).
    std::vector<alg::Term> terms = {
        {0, 1, 3, -1}, {2, 3, 4, -1}, {0, 3, 1, -1}, {1, 2, 2, -1}};
    alg::MatchingTable table(4, terms, 0, 99, std::nullopt, opts);
    auto w = table.query(0, 0, 100);
    REQUIRE(w.has_value());
    CHECK(*w == 3); // 1 + 2 beats 3 + 4
    auto tight = table.query(0, 0, 2);
    CHECK_FALSE(tight.has_value());
}

TEST_CASE("axis deletion and requirement masks") {
    SolveOptions opts;
    // Two disjoint edges with axes 0 and 1 plus a crossing pair without axes.
    std::vector<alg::Term> terms = {
        {0, 1, 1, 0}, {2, 3, 1, 1}, {0, 2, 5, -1}, {1, 3, 5, -1}};
    alg::MatchingTable table(4, terms, 2, 7, std::nullopt, opts);
    // requiring both axes forces the axis edges
    auto both = table.query(0, 0b11, 100);
    REQUIRE(both.has_value());
    CHECK(*both == 2);
    // deleting axis 0 leaves only the crossing matching
    auto del = table.query(0b01, 0b10, 100);
    CHECK_FALSE(del.has_value()); // axis-1 edge cannot be completed once 0-1 is gone
    auto del_free = table.query(0b01, 0, 100);
    REQUIRE(del_free.has_value());
    CHECK(*del_free == 10);
}

TEST_CASE("trial count stays small for realistic parameters") {
    CHECK(alg::trials_needed(10, 100, 2) == 1);
    CHECK(alg::trials_needed(2000, 100000, 3) == 1);
}

TEST_CASE("oversized interpolation degrees raise a capacity error") {
    SolveOptions opts;
    opts.degree_cap = 16;
    std::vector<alg::Term> terms = {{0, 1, 1000, -1}, {2, 3, 0, -1}, {0, 2, 500, -1},
                                    {1, 3, 1, -1}};
    CHECK_THROWS_AS(alg::MatchingTable(4, terms, 0, 1, std::nullopt, opts), CapacityError);
}

TEST_CASE("parallel table evaluation matches the serial one") {
    std::mt19937_64 rng(211);
    for (int it = 0; it < 10; ++it) {
        int n = 2 * (2 + static_cast<int>(rng() % 3));
        std::vector<alg::Term> terms;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 2)
                    terms.push_back({u, v, static_cast<long long>(rng() % 4),
                                     static_cast<int>(rng() % 3) - 1});
        SolveOptions serial, parallel;
        parallel.threads = 3;
        alg::MatchingTable a(n, terms, 2, 77 + it, std::nullopt, serial);
        alg::MatchingTable b(n, terms, 2, 77 + it, std::nullopt, parallel);
        for (std::uint32_t req = 0; req < 4; ++req) {
            auto wa = a.query(0, req, 1000);
            auto wb = b.query(0, req, 1000);
            CHECK(wa == wb);
        }
    }
}
