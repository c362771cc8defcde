#include "rainbowpack/conjoining.hpp"

#include "rainbowpack/engine.hpp"
#include "rainbowpack/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace rainbowpack::conjoining {

namespace {

// Pattern index crossed by an edge between the two classes, or -1.
std::vector<int> crossing_axes(const ConjoiningInstance& inst) {
    std::map<std::pair<int, int>, int> by_pair;
    for (std::size_t p = 0; p < inst.pattern.size(); ++p) {
        auto key = std::minmax(inst.pattern[p].a, inst.pattern[p].b);
        by_pair.emplace(key, static_cast<int>(p));
    }
    std::vector<int> axis(inst.edges.size(), -1);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        auto [u, v] = inst.edges[e];
        auto key = std::minmax(inst.node_class[u], inst.node_class[v]);
        auto it = by_pair.find(key);
        if (it != by_pair.end()) axis[e] = it->second;
    }
    return axis;
}

bool fault_injected(std::uint64_t seed, const SolveOptions& opts) {
    if (opts.fault_injection_rate <= 0.0) return false;
    std::mt19937_64 rng(derive_seed(seed, 0xfau));
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < opts.fault_injection_rate;
}

// Decision on the alive-induced subgraph with an explicit required-axis
// mask. `hint` must upper-bound the weight of every perfect matching of
// that subgraph.
std::optional<long long> decide_masked(const ConjoiningInstance& inst,
                                       const std::vector<int>& axis,
                                       const std::vector<char>& alive,
                                       std::uint32_t required_mask, long long budget,
                                       std::optional<long long> hint, std::uint64_t seed,
                                       const SolveOptions& opts) {
    if (budget < 0) return std::nullopt;
    if (fault_injected(seed, opts)) return std::nullopt;
    std::vector<int> index(inst.num_nodes, -1);
    int alive_count = 0;
    for (int v = 0; v < inst.num_nodes; ++v)
        if (alive[v]) index[v] = alive_count++;
    if (alive_count & 1) return std::nullopt;

    std::vector<alg::Term> terms;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        auto [u, v] = inst.edges[e];
        if (!alive[u] || !alive[v]) continue;
        terms.push_back({index[u], index[v], inst.weights[e], axis[e]});
    }

    int trials = alg::trials_needed(alive_count, budget, opts.error_exponent);
    std::optional<long long> best;
    for (int t = 0; t < trials; ++t) {
        alg::MatchingTable table(alive_count, terms, static_cast<int>(inst.pattern.size()),
                                 derive_seed(seed, static_cast<std::uint64_t>(t)), hint, opts);
        auto w = table.query(0, required_mask, budget);
        if (w && (!best || *w < *best)) best = w;
    }
    return best;
}

// Deterministic combinatorial witness search, tried before the algebraic
// self-reduction. Gives up after a node-expansion budget.
struct WitnessSearch {
    const ConjoiningInstance& inst;
    const std::vector<int>& axis;
    std::vector<std::vector<int>> incident;
    std::vector<char> matched;
    std::vector<int> chosen;
    std::size_t budget;

    WitnessSearch(const ConjoiningInstance& i, const std::vector<int>& ax, std::size_t b)
        : inst(i), axis(ax), matched(i.num_nodes, 0), budget(b) {
        incident.resize(inst.num_nodes);
        for (std::size_t e = 0; e < inst.edges.size(); ++e) {
            incident[inst.edges[e].first].push_back(static_cast<int>(e));
            incident[inst.edges[e].second].push_back(static_cast<int>(e));
        }
    }

    bool run(int from, long long weight_left, std::uint32_t required) {
        if (budget == 0) return false;
        --budget;
        int u = from;
        while (u < inst.num_nodes && matched[u]) ++u;
        if (u == inst.num_nodes) return weight_left == 0 && required == 0;
        for (int e : incident[u]) {
            auto [a, b] = inst.edges[e];
            int other = a == u ? b : a;
            if (other == u || matched[other]) continue;
            long long w = inst.weights[e];
            if (w > weight_left) continue;
            std::uint32_t req = required;
            if (axis[e] >= 0) req &= ~(std::uint32_t{1} << axis[e]);
            matched[u] = matched[other] = 1;
            chosen.push_back(e);
            if (run(u + 1, weight_left - w, req)) return true;
            chosen.pop_back();
            matched[u] = matched[other] = 0;
        }
        return false;
    }
};

ConjoiningSolution assemble(const ConjoiningInstance& inst, const std::vector<int>& axis,
                            const std::vector<int>& edges) {
    ConjoiningSolution sol;
    sol.matching_edges = edges;
    for (int e : edges) {
        sol.weight += inst.weights[e];
        if (axis[e] >= 0) sol.satisfied_pattern.push_back(axis[e]);
    }
    std::sort(sol.satisfied_pattern.begin(), sol.satisfied_pattern.end());
    sol.satisfied_pattern.erase(
        std::unique(sol.satisfied_pattern.begin(), sol.satisfied_pattern.end()),
        sol.satisfied_pattern.end());
    return sol;
}

} // namespace

LayeredInstance eliminate_self_loops(const ConjoiningInstance& inst) {
    LayeredInstance out;
    out.orig_nodes = inst.num_nodes;
    ConjoiningInstance& g = out.inst;
    const int n = inst.num_nodes;
    const int t = inst.num_classes;

    g.num_nodes = 3 * n;
    g.num_classes = 2 * t + 1;
    g.node_class.resize(static_cast<std::size_t>(3) * n);
    for (int v = 0; v < n; ++v) {
        g.node_class[3 * v] = inst.node_class[v];         // v'
        g.node_class[3 * v + 1] = t + inst.node_class[v]; // v''
        g.node_class[3 * v + 2] = 2 * t;                  // v*, one shared class
    }
    for (const auto& pe : inst.pattern) {
        auto [a, b] = std::minmax(pe.a, pe.b); // lexicographic direction
        g.pattern.push_back({a, t + b});
    }
    for (int v = 0; v < n; ++v) {
        g.edges.emplace_back(3 * v, 3 * v + 2);
        g.weights.push_back(0);
        out.edge_origin.push_back(-1);
        g.edges.emplace_back(3 * v + 1, 3 * v + 2);
        g.weights.push_back(0);
        out.edge_origin.push_back(-1);
    }
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        auto [u, v] = inst.edges[e];
        g.edges.emplace_back(3 * u, 3 * v + 1); // u' -- v''
        g.weights.push_back(inst.weights[e]);
        out.edge_origin.push_back(static_cast<int>(e));
        g.edges.emplace_back(3 * v, 3 * u + 1); // v' -- u''
        g.weights.push_back(inst.weights[e]);
        out.edge_origin.push_back(static_cast<int>(e));
    }
    g.budget = inst.budget;
    g.max_weight_hint = inst.max_weight_hint;
    return out;
}

std::optional<long long> decide_min_weight(const ConjoiningInstance& inst, std::uint64_t seed,
                                           const SolveOptions& opts) {
    if (inst.pattern.size() > 20) throw CapacityError("pattern too wide");
    auto axis = crossing_axes(inst);
    std::vector<char> alive(inst.num_nodes, 1);
    std::uint32_t required = (std::uint32_t{1} << inst.pattern.size()) - 1;
    return decide_masked(inst, axis, alive, required, inst.budget, inst.max_weight_hint, seed,
                         opts);
}

ConjoiningSolution extract_matching(const ConjoiningInstance& inst, long long target_weight,
                                    std::uint64_t seed, const SolveOptions& opts) {
    auto axis = crossing_axes(inst);
    std::uint32_t all_required = (std::uint32_t{1} << inst.pattern.size()) - 1;

    WitnessSearch greedy(inst, axis, opts.greedy_budget);
    if (greedy.run(0, target_weight, all_required)) {
        auto sol = assemble(inst, axis, greedy.chosen);
        if (validate_solution(inst, sol) && sol.weight == target_weight) return sol;
    }

    for (int attempt = 0; attempt <= opts.extract_retries; ++attempt) {
        std::uint64_t attempt_seed = derive_seed(seed, 0x5eed0000u + attempt);
        std::vector<char> alive(inst.num_nodes, 1);
        std::uint32_t required = all_required;
        long long remaining = target_weight;
        std::vector<int> committed;
        int alive_count = inst.num_nodes;

        for (std::size_t e = 0; e < inst.edges.size() && alive_count > 0; ++e) {
            auto [u, v] = inst.edges[e];
            if (!alive[u] || !alive[v] || u == v) continue;
            long long w = inst.weights[e];
            if (w > remaining) continue;
            std::uint32_t req = required;
            if (axis[e] >= 0) req &= ~(std::uint32_t{1} << axis[e]);
            // Matchings of the residual extend the committed edges to full
            // perfect matchings, so the residual weight bound shrinks with
            // the committed weight.
            std::optional<long long> hint;
            if (inst.max_weight_hint)
                hint = *inst.max_weight_hint - (target_weight - remaining) - w;
            alive[u] = alive[v] = 0;
            auto residual = decide_masked(inst, axis, alive, req, remaining - w, hint,
                                          derive_seed(attempt_seed, e), opts);
            if (residual && *residual == remaining - w) {
                committed.push_back(static_cast<int>(e));
                required = req;
                remaining -= w;
                alive_count -= 2;
            } else {
                alive[u] = alive[v] = 1; // edge cannot extend a minimum solution
            }
        }

        if (alive_count == 0 && required == 0 && remaining == 0) {
            auto sol = assemble(inst, axis, committed);
            if (validate_solution(inst, sol) && sol.weight == target_weight) return sol;
        }
    }
    throw RandomizedFailure("matching extraction failed after retries");
}

std::optional<ConjoiningSolution> brute_force_conjoining(const ConjoiningInstance& inst,
                                                         int node_cap) {
    if (inst.num_nodes > node_cap) throw CapacityError("brute force cap exceeded");
    if (inst.num_nodes & 1) return std::nullopt;
    auto axis = crossing_axes(inst);

    std::vector<std::vector<int>> incident(inst.num_nodes);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        incident[inst.edges[e].first].push_back(static_cast<int>(e));
        incident[inst.edges[e].second].push_back(static_cast<int>(e));
    }

    std::optional<ConjoiningSolution> best;
    std::vector<char> matched(inst.num_nodes, 0);
    std::vector<int> chosen;

    std::function<void(int, long long, std::uint32_t)> rec = [&](int from, long long weight,
                                                                 std::uint32_t missing) {
        if (best && weight >= best->weight) return;
        if (weight > inst.budget) return;
        int u = from;
        while (u < inst.num_nodes && matched[u]) ++u;
        if (u == inst.num_nodes) {
            if (missing != 0) return;
            best = assemble(inst, axis, chosen);
            return;
        }
        for (int e : incident[u]) {
            auto [a, b] = inst.edges[e];
            int other = a == u ? b : a;
            if (other == u || matched[other]) continue;
            std::uint32_t next_missing = missing;
            if (axis[e] >= 0) next_missing &= ~(std::uint32_t{1} << axis[e]);
            matched[u] = matched[other] = 1;
            chosen.push_back(e);
            rec(u + 1, weight + inst.weights[e], next_missing);
            chosen.pop_back();
            matched[u] = matched[other] = 0;
        }
    };

    std::uint32_t all = (std::uint32_t{1} << inst.pattern.size()) - 1;
    rec(0, 0, all);
    return best;
}

bool validate_solution(const ConjoiningInstance& inst, const ConjoiningSolution& sol) {
    std::vector<char> matched(inst.num_nodes, 0);
    long long weight = 0;
    auto axis = crossing_axes(inst);
    std::vector<char> crossed(inst.pattern.size(), 0);
    for (int e : sol.matching_edges) {
        if (e < 0 || e >= static_cast<int>(inst.edges.size())) return false;
        auto [u, v] = inst.edges[e];
        if (matched[u] || matched[v]) return false;
        matched[u] = matched[v] = 1;
        weight += inst.weights[e];
        if (axis[e] >= 0) crossed[axis[e]] = 1;
    }
    for (int v = 0; v < inst.num_nodes; ++v)
        if (!matched[v]) return false;
    for (std::size_t p = 0; p < inst.pattern.size(); ++p)
        if (!crossed[p]) return false;
    if (weight != sol.weight) return false;
    if (weight > inst.budget) return false;
    return true;
}

} // namespace rainbowpack::conjoining
