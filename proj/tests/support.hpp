#ifndef RAINBOWPACK_TESTS_SUPPORT_HPP
#define RAINBOWPACK_TESTS_SUPPORT_HPP

#include "rainbowpack/conjoining.hpp"
#include "rainbowpack/gf61.hpp"
#include "rainbowpack/instance.hpp"
#include "rainbowpack/otr.hpp"
#include "rainbowpack/smallness.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace testsupport {

using namespace rainbowpack;

// ---------------------------------------------------------------------
// Random inputs

inline Rational random_coordinate(std::mt19937_64& rng, bool small) {
    // small: 1/20 .. 6/20, large: 7/20 .. 19/20
    if (small) return Rational(1 + static_cast<long long>(rng() % 6), 20);
    return Rational(7 + static_cast<long long>(rng() % 13), 20);
}

inline Instance random_instance(std::mt19937_64& rng, int max_n, int max_d, int max_k) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Instance inst;
        inst.dimension = 1 + static_cast<int>(rng() % max_d);
        inst.capacity.assign(inst.dimension, Rational(1));
        int n = 1 + static_cast<int>(rng() % max_n);
        for (int i = 0; i < n; ++i) {
            bool small = rng() % 4 == 0;
            RationalVec v;
            for (int d = 0; d < inst.dimension; ++d) v.push_back(random_coordinate(rng, small));
            inst.vectors.push_back(std::move(v));
        }
        if (smallness::split_small_large(inst, Mode::pack).k <= max_k) return inst;
    }
    Instance fallback;
    fallback.dimension = 1;
    fallback.capacity = {Rational(1)};
    fallback.vectors = {{Rational(1, 2)}};
    return fallback;
}

inline Instance random_cover_instance(std::mt19937_64& rng, int max_n, int max_d, int max_k) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Instance inst;
        inst.dimension = 1 + static_cast<int>(rng() % max_d);
        inst.capacity.assign(inst.dimension, Rational(1));
        int n = 1 + static_cast<int>(rng() % max_n);
        for (int i = 0; i < n; ++i) {
            bool small = rng() % 4 == 0;
            RationalVec v;
            for (int d = 0; d < inst.dimension; ++d) {
                // covering wants some items above the capacity too
                if (!small && rng() % 6 == 0)
                    v.push_back(Rational(20 + static_cast<long long>(rng() % 8), 20));
                else
                    v.push_back(random_coordinate(rng, small));
            }
            inst.vectors.push_back(std::move(v));
        }
        // k is measured on the preprocessed instance, like the solver does
        Instance probe = inst;
        probe.vectors.clear();
        for (const auto& v : inst.vectors)
            if (!vec_ge(v, inst.capacity)) probe.vectors.push_back(v);
        if (smallness::split_small_large(probe, Mode::cover).k <= max_k) return inst;
    }
    Instance fallback;
    fallback.dimension = 1;
    fallback.capacity = {Rational(1)};
    fallback.vectors = {{Rational(3, 5)}, {Rational(3, 5)}};
    return fallback;
}

inline otr::ColoredGraph random_colored_graph(std::mt19937_64& rng, int max_nodes, int max_colors,
                                              long long max_weight) {
    otr::ColoredGraph cg;
    cg.num_nodes = 2 * (1 + static_cast<int>(rng() % (max_nodes / 2)));
    cg.num_colors = 1 + static_cast<int>(rng() % max_colors);
    for (int u = 0; u < cg.num_nodes; ++u) {
        for (int v = u + 1; v < cg.num_nodes; ++v) {
            if (rng() % 2) continue;
            otr::ColoredEdge edge;
            edge.u = u;
            edge.v = v;
            for (int c = 0; c < cg.num_colors; ++c)
                if (rng() % 2) edge.colors.push_back({c, static_cast<long long>(rng() % (max_weight + 1))});
            if (edge.colors.empty())
                edge.colors.push_back({static_cast<int>(rng() % cg.num_colors),
                                       static_cast<long long>(rng() % (max_weight + 1))});
            cg.edges.push_back(std::move(edge));
        }
    }
    cg.budget = rng() % 3 == 0 ? static_cast<long long>(rng() % 8)
                               : 1000000; // mostly unconstrained, sometimes tight
    return cg;
}

inline conjoining::ConjoiningInstance random_conjoining(std::mt19937_64& rng, int max_nodes,
                                                        int max_pattern, long long max_weight,
                                                        bool allow_loops) {
    conjoining::ConjoiningInstance inst;
    inst.num_nodes = 2 * (1 + static_cast<int>(rng() % (max_nodes / 2)));
    inst.num_classes = 1 + static_cast<int>(rng() % 3);
    for (int v = 0; v < inst.num_nodes; ++v)
        inst.node_class.push_back(static_cast<int>(rng() % inst.num_classes));
    for (int u = 0; u < inst.num_nodes; ++u) {
        for (int v = u + 1; v < inst.num_nodes; ++v) {
            if (rng() % 2) continue;
            inst.edges.emplace_back(u, v);
            inst.weights.push_back(static_cast<long long>(rng() % (max_weight + 1)));
        }
    }
    std::vector<std::pair<int, int>> candidates;
    for (int a = 0; a < inst.num_classes; ++a)
        for (int b = a; b < inst.num_classes; ++b)
            if (allow_loops || a != b) candidates.emplace_back(a, b);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    int want = static_cast<int>(rng() % (max_pattern + 1));
    for (int i = 0; i < want && i < static_cast<int>(candidates.size()); ++i)
        inst.pattern.push_back({candidates[i].first, candidates[i].second});
    inst.budget = rng() % 3 == 0 ? static_cast<long long>(rng() % 6) : 1000000;
    return inst;
}

// ---------------------------------------------------------------------
// Independent reference routines (kept separate from the library paths
// they check)

// Determinant over GF(P) by plain Gaussian elimination.
inline std::uint64_t determinant_gf(std::vector<std::uint64_t> a, int n) {
    using namespace gf;
    std::uint64_t det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (a[static_cast<std::size_t>(row) * n + col]) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            det = neg(det);
        }
        std::uint64_t p = a[static_cast<std::size_t>(col) * n + col];
        det = mul(det, p);
        std::uint64_t pinv = inv(p);
        for (int row = col + 1; row < n; ++row) {
            std::uint64_t factor = mul(a[static_cast<std::size_t>(row) * n + col], pinv);
            if (!factor) continue;
            for (int j = col; j < n; ++j) {
                a[static_cast<std::size_t>(row) * n + j] =
                    sub(a[static_cast<std::size_t>(row) * n + j],
                        mul(factor, a[static_cast<std::size_t>(col) * n + j]));
            }
        }
    }
    return det;
}

// Minimum hitting set by exhaustive subset enumeration, ascending size.
inline std::optional<std::vector<int>> brute_min_hitting_set(
    const std::vector<smallness::FitTriple>& triples, int n, int k_max) {
    for (int size = 0; size <= std::min(n, k_max); ++size) {
        std::vector<int> subset(size);
        std::function<std::optional<std::vector<int>>(int, int)> rec =
            [&](int start, int depth) -> std::optional<std::vector<int>> {
            if (depth == size) {
                for (const auto& t : triples) {
                    bool hit = false;
                    for (int e : t.idx)
                        if (std::find(subset.begin(), subset.end(), e) != subset.end()) hit = true;
                    if (!hit) return std::nullopt;
                }
                return subset;
            }
            for (int v = start; v < n; ++v) {
                subset[depth] = v;
                if (auto r = rec(v + 1, depth + 1)) return r;
            }
            return std::nullopt;
        };
        if (auto r = rec(0, 0)) return r;
    }
    return std::nullopt;
}

// Direct re-evaluation of the feasibility inequalities, written
// independently of validate().
inline bool independent_check(const Instance& inst, const Assignment& asg, Mode mode) {
    if (static_cast<int>(asg.placement.size()) != inst.n()) return false;
    std::map<int, RationalVec> loads;
    long long profit = 0;
    for (int i = 0; i < inst.n(); ++i) {
        auto p = asg.placement[i];
        if (!p) {
            if (mode != Mode::knapsack) return false;
            continue;
        }
        if (*p < 1) return false;
        if (mode == Mode::knapsack && inst.containers && *p > *inst.containers) return false;
        auto it = loads.find(*p);
        if (it == loads.end()) it = loads.emplace(*p, RationalVec(inst.dimension, Rational(0))).first;
        for (int d = 0; d < inst.dimension; ++d) it->second[d] += inst.vectors[i][d];
        if (inst.profits) profit += (*inst.profits)[i];
    }
    long long objective = 0;
    if (mode == Mode::pack || mode == Mode::knapsack) {
        for (auto& [c, load] : loads)
            for (int d = 0; d < inst.dimension; ++d)
                if (load[d] > inst.capacity[d]) return false;
    }
    if (mode == Mode::pack) objective = static_cast<long long>(loads.size());
    if (mode == Mode::cover) {
        for (auto& [c, load] : loads) {
            bool covered = true;
            for (int d = 0; d < inst.dimension; ++d)
                if (load[d] < inst.capacity[d]) covered = false;
            if (covered) ++objective;
        }
    }
    if (mode == Mode::knapsack) objective = profit;
    return objective == asg.objective;
}

} // namespace testsupport

#endif
