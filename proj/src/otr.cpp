#include "rainbowpack/otr.hpp"

#include "rainbowpack/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace rainbowpack::otr {

namespace {

std::vector<alg::Term> engine_terms(const ColoredGraph& cg, const std::vector<char>* alive,
                                    const std::vector<int>* index) {
    std::vector<alg::Term> terms;
    for (const auto& e : cg.edges) {
        if (alive && (!(*alive)[e.u] || !(*alive)[e.v])) continue;
        int u = index ? (*index)[e.u] : e.u;
        int v = index ? (*index)[e.v] : e.v;
        for (const auto& cw : e.colors) terms.push_back({u, v, cw.weight, cw.color});
    }
    return terms;
}

bool every_color_present(const ColoredGraph& cg) {
    std::vector<char> seen(cg.num_colors, 0);
    for (const auto& e : cg.edges)
        for (const auto& cw : e.colors) seen[cw.color] = 1;
    for (char s : seen)
        if (!s) return false;
    return true;
}

bool fault_injected(std::uint64_t seed, const SolveOptions& opts) {
    if (opts.fault_injection_rate <= 0.0) return false;
    std::mt19937_64 rng(derive_seed(seed, 0xfbu));
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < opts.fault_injection_rate;
}

std::optional<long long> decide_masked(const ColoredGraph& cg, const std::vector<char>& alive,
                                       std::uint32_t deleted_mask, std::uint32_t required_mask,
                                       long long budget, std::optional<long long> hint,
                                       std::uint64_t seed, const SolveOptions& opts) {
    if (budget < 0) return std::nullopt;
    if (fault_injected(seed, opts)) return std::nullopt;
    std::vector<int> index(cg.num_nodes, -1);
    int alive_count = 0;
    for (int v = 0; v < cg.num_nodes; ++v)
        if (alive[v]) index[v] = alive_count++;
    if (alive_count & 1) return std::nullopt;

    auto terms = engine_terms(cg, &alive, &index);
    int trials = alg::trials_needed(alive_count, budget, opts.error_exponent);
    std::optional<long long> best;
    for (int t = 0; t < trials; ++t) {
        alg::MatchingTable table(alive_count, terms, cg.num_colors,
                                 derive_seed(seed, static_cast<std::uint64_t>(t)), hint, opts);
        auto w = table.query(deleted_mask, required_mask, budget);
        if (w && (!best || *w < *best)) best = w;
    }
    return best;
}

// Budgeted deterministic search for a matching of exactly the target
// weight covering all colors; cheap first try before self-reduction.
struct WitnessSearch {
    const ColoredGraph& cg;
    std::vector<std::vector<int>> incident;
    std::vector<char> matched;
    std::vector<std::pair<int, int>> chosen;
    std::size_t budget;

    WitnessSearch(const ColoredGraph& g, std::size_t b) : cg(g), matched(g.num_nodes, 0), budget(b) {
        incident.resize(cg.num_nodes);
        for (std::size_t e = 0; e < cg.edges.size(); ++e) {
            incident[cg.edges[e].u].push_back(static_cast<int>(e));
            incident[cg.edges[e].v].push_back(static_cast<int>(e));
        }
    }

    bool run(int from, long long weight_left, std::uint32_t required) {
        if (budget == 0) return false;
        --budget;
        int u = from;
        while (u < cg.num_nodes && matched[u]) ++u;
        if (u == cg.num_nodes) return weight_left == 0 && required == 0;
        int pairs_left = 0;
        for (int w = u; w < cg.num_nodes; ++w)
            if (!matched[w]) ++pairs_left;
        pairs_left /= 2;
        if (__builtin_popcount(required) > pairs_left) return false;
        for (int e : incident[u]) {
            const auto& edge = cg.edges[e];
            int other = edge.u == u ? edge.v : edge.u;
            if (other == u || matched[other]) continue;
            for (const auto& cw : edge.colors) {
                if (cw.weight > weight_left) continue;
                matched[u] = matched[other] = 1;
                chosen.emplace_back(e, cw.color);
                if (run(u + 1, weight_left - cw.weight,
                        required & ~(std::uint32_t{1} << cw.color)))
                    return true;
                chosen.pop_back();
                matched[u] = matched[other] = 0;
            }
        }
        return false;
    }
};

} // namespace

OtrReduction reduce_to_conjoining(const ColoredGraph& cg) {
    OtrReduction red;
    red.orig_nodes = cg.num_nodes;
    red.orig_colors = cg.num_colors;
    auto& g = red.inst;

    const int n = cg.num_nodes;
    const int c = cg.num_colors;
    const int copies = c * n;
    const int knockout_per_node = std::max(c - 1, 0);

    g.num_nodes = copies + knockout_per_node * n;
    g.num_classes = c + 1; // one class per copy, one for all knock-out sets
    g.node_class.resize(g.num_nodes);
    for (int col = 0; col < c; ++col)
        for (int v = 0; v < n; ++v) g.node_class[col * n + v] = col;
    for (int i = copies; i < g.num_nodes; ++i) g.node_class[i] = c;

    long long max_weight = 0;
    for (int col = 0; col < c; ++col) {
        for (std::size_t e = 0; e < cg.edges.size(); ++e) {
            const auto& edge = cg.edges[e];
            for (const auto& cw : edge.colors) {
                if (cw.color != col) continue;
                g.edges.emplace_back(col * n + edge.u, col * n + edge.v);
                g.weights.push_back(cw.weight);
                red.edge_orig_edge.push_back(static_cast<int>(e));
                red.edge_color.push_back(col);
                max_weight = std::max(max_weight, cw.weight);
            }
        }
    }
    for (int v = 0; v < n; ++v) {
        for (int t = 0; t < knockout_per_node; ++t) {
            int j_node = copies + v * knockout_per_node + t;
            for (int col = 0; col < c; ++col) {
                g.edges.emplace_back(col * n + v, j_node);
                g.weights.push_back(0);
                red.edge_orig_edge.push_back(-1);
                red.edge_color.push_back(-1);
            }
        }
    }
    for (int col = 0; col < c; ++col) g.pattern.push_back({col, col});
    g.budget = cg.budget;
    if (cg.max_weight_hint)
        g.max_weight_hint = cg.max_weight_hint;
    else
        g.max_weight_hint = static_cast<long long>(n / 2) * max_weight;
    return red;
}

RainbowDecider::RainbowDecider(const ColoredGraph& cg, std::uint64_t seed,
                               const SolveOptions& opts) {
    num_nodes_ = cg.num_nodes;
    auto terms = engine_terms(cg, nullptr, nullptr);
    int trials = alg::trials_needed(cg.num_nodes, cg.budget, opts.error_exponent);
    for (int t = 0; t < trials; ++t)
        tables_.emplace_back(cg.num_nodes, terms, cg.num_colors,
                             derive_seed(seed, static_cast<std::uint64_t>(t)),
                             cg.max_weight_hint, opts);
}

std::optional<long long> RainbowDecider::query(std::uint32_t deleted_mask,
                                               std::uint32_t required_mask,
                                               long long budget) const {
    if (budget < 0) return std::nullopt;
    std::optional<long long> best;
    for (const auto& table : tables_) {
        auto w = table.query(deleted_mask, required_mask, budget);
        if (w && (!best || *w < *best)) best = w;
    }
    return best;
}

std::optional<long long> decide(const ColoredGraph& cg, std::uint64_t seed,
                                const SolveOptions& opts) {
    if (cg.num_colors > 20) throw CapacityError("too many colors");
    if (cg.num_colors > 0 && !every_color_present(cg)) return std::nullopt;
    if (cg.num_nodes & 1) return std::nullopt;
    std::vector<char> alive(cg.num_nodes, 1);
    std::uint32_t required = (std::uint32_t{1} << cg.num_colors) - 1;
    return decide_masked(cg, alive, 0, required, cg.budget, cg.max_weight_hint, seed, opts);
}

std::optional<RainbowSolution> solve(const ColoredGraph& cg, std::uint64_t seed,
                                     const SolveOptions& opts) {
    auto w_star = decide(cg, seed, opts);
    if (!w_star) return std::nullopt;
    std::uint32_t all_required = (std::uint32_t{1} << cg.num_colors) - 1;

    WitnessSearch greedy(cg, opts.greedy_budget);
    if (greedy.run(0, *w_star, all_required)) {
        RainbowSolution sol;
        sol.matching = greedy.chosen;
        sol.weight = *w_star;
        if (validate_rainbow(cg, sol)) return sol;
    }

    for (int attempt = 0; attempt <= opts.extract_retries; ++attempt) {
        std::uint64_t attempt_seed = derive_seed(seed, 0xec0000u + attempt);
        std::vector<char> alive(cg.num_nodes, 1);
        std::uint32_t required = all_required;
        long long remaining = *w_star;
        RainbowSolution sol;
        int alive_count = cg.num_nodes;

        for (std::size_t e = 0; e < cg.edges.size() && alive_count > 0; ++e) {
            const auto& edge = cg.edges[e];
            if (!alive[edge.u] || !alive[edge.v]) continue;
            for (const auto& cw : edge.colors) {
                if (cw.weight > remaining) continue;
                std::uint32_t req = required & ~(std::uint32_t{1} << cw.color);
                std::optional<long long> hint;
                if (cg.max_weight_hint)
                    hint = *cg.max_weight_hint - (*w_star - remaining) - cw.weight;
                alive[edge.u] = alive[edge.v] = 0;
                auto residual = decide_masked(cg, alive, 0, req, remaining - cw.weight, hint,
                                              derive_seed(attempt_seed, e * 64 + cw.color), opts);
                if (residual && *residual == remaining - cw.weight) {
                    sol.matching.emplace_back(static_cast<int>(e), cw.color);
                    required = req;
                    remaining -= cw.weight;
                    alive_count -= 2;
                    break;
                }
                alive[edge.u] = alive[edge.v] = 1;
            }
        }

        if (alive_count == 0 && required == 0 && remaining == 0) {
            sol.weight = *w_star;
            if (validate_rainbow(cg, sol)) return sol;
        }
    }
    throw RandomizedFailure("rainbow matching extraction failed after retries");
}

std::optional<RainbowSolution> solve_via_conjoining(const ColoredGraph& cg, std::uint64_t seed,
                                                    const SolveOptions& opts) {
    if (cg.num_colors > 0 && !every_color_present(cg)) return std::nullopt;
    auto red = reduce_to_conjoining(cg);
    auto layered = conjoining::eliminate_self_loops(red.inst);
    auto w_star = conjoining::decide_min_weight(layered.inst, seed, opts);
    if (!w_star) return std::nullopt;
    auto inner = conjoining::extract_matching(layered.inst, *w_star, seed, opts);

    // Per original node exactly one copy is matched by a copy edge; the
    // rest pair with the knock-out set.
    std::vector<int> copies_matched(cg.num_nodes, 0);
    RainbowSolution sol;
    for (int layered_edge : inner.matching_edges) {
        int reduced_edge = layered.edge_origin[layered_edge];
        if (reduced_edge < 0) continue; // star edge from the layering
        int orig_edge = red.edge_orig_edge[reduced_edge];
        if (orig_edge < 0) continue; // knock-out edge
        sol.matching.emplace_back(orig_edge, red.edge_color[reduced_edge]);
        ++copies_matched[cg.edges[orig_edge].u];
        ++copies_matched[cg.edges[orig_edge].v];
    }
    for (auto& [e, color] : sol.matching) {
        for (const auto& cw : cg.edges[e].colors)
            if (cw.color == color) sol.weight += cw.weight;
    }
    for (int v = 0; v < cg.num_nodes; ++v) {
        if (copies_matched[v] != 1)
            throw RandomizedFailure("reduced matching does not project to the colored graph");
    }
    if (!validate_rainbow(cg, sol))
        throw RandomizedFailure("projected rainbow matching failed validation");
    return sol;
}

std::optional<RainbowSolution> brute_force(const ColoredGraph& cg, int node_cap) {
    if (cg.num_nodes > node_cap) throw CapacityError("brute force cap exceeded");
    if (cg.num_colors > 20) throw CapacityError("too many colors");
    if (cg.num_nodes & 1) return std::nullopt;

    std::vector<std::vector<int>> incident(cg.num_nodes);
    for (std::size_t e = 0; e < cg.edges.size(); ++e) {
        incident[cg.edges[e].u].push_back(static_cast<int>(e));
        incident[cg.edges[e].v].push_back(static_cast<int>(e));
    }

    const std::uint32_t full = (std::uint32_t{1} << cg.num_colors) - 1;
    std::optional<RainbowSolution> best;
    std::vector<char> matched(cg.num_nodes, 0);
    std::vector<int> chosen;

    // Minimum-weight surjective coloring of a fixed matching, by subset DP.
    auto color_matching = [&](const std::vector<int>& edges)
        -> std::optional<std::pair<long long, std::vector<int>>> {
        const long long inf = std::numeric_limits<long long>::max() / 4;
        std::vector<std::vector<long long>> dp(edges.size() + 1,
                                               std::vector<long long>(full + 1, inf));
        dp[0][0] = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::uint32_t mask = 0; mask <= full; ++mask) {
                if (dp[i][mask] >= inf) continue;
                for (const auto& cw : cg.edges[edges[i]].colors) {
                    std::uint32_t next = mask | (std::uint32_t{1} << cw.color);
                    dp[i + 1][next] = std::min(dp[i + 1][next], dp[i][mask] + cw.weight);
                }
            }
        }
        if (dp[edges.size()][full] >= inf) return std::nullopt;
        // Recover one optimal coloring.
        std::vector<int> colors(edges.size(), -1);
        std::uint32_t mask = full;
        for (std::size_t i = edges.size(); i > 0; --i) {
            for (const auto& cw : cg.edges[edges[i - 1]].colors) {
                std::uint32_t bit = std::uint32_t{1} << cw.color;
                for (std::uint32_t prev : {mask, mask ^ bit}) {
                    if ((prev | bit) != mask) continue;
                    if (dp[i - 1][prev] < std::numeric_limits<long long>::max() / 4 &&
                        dp[i - 1][prev] + cw.weight == dp[i][mask]) {
                        colors[i - 1] = cw.color;
                        mask = prev;
                        break;
                    }
                }
                if (colors[i - 1] >= 0) break;
            }
            if (colors[i - 1] < 0) return std::nullopt; // unreachable
        }
        return std::make_pair(dp[edges.size()][full], colors);
    };

    std::function<void(int)> rec = [&](int from) {
        int u = from;
        while (u < cg.num_nodes && matched[u]) ++u;
        if (u == cg.num_nodes) {
            auto colored = color_matching(chosen);
            if (!colored) return;
            auto [weight, colors] = *colored;
            if (weight > cg.budget) return;
            if (!best || weight < best->weight) {
                RainbowSolution sol;
                sol.weight = weight;
                for (std::size_t i = 0; i < chosen.size(); ++i)
                    sol.matching.emplace_back(chosen[i], colors[i]);
                best = sol;
            }
            return;
        }
        for (int e : incident[u]) {
            const auto& edge = cg.edges[e];
            int other = edge.u == u ? edge.v : edge.u;
            if (other == u || matched[other]) continue;
            matched[u] = matched[other] = 1;
            chosen.push_back(e);
            rec(u + 1);
            chosen.pop_back();
            matched[u] = matched[other] = 0;
        }
    };
    rec(0);
    return best;
}

bool validate_rainbow(const ColoredGraph& cg, const RainbowSolution& sol) {
    std::vector<char> matched(cg.num_nodes, 0);
    std::vector<char> color_used(cg.num_colors, 0);
    long long weight = 0;
    for (const auto& [e, color] : sol.matching) {
        if (e < 0 || e >= static_cast<int>(cg.edges.size())) return false;
        const auto& edge = cg.edges[e];
        if (matched[edge.u] || matched[edge.v]) return false;
        matched[edge.u] = matched[edge.v] = 1;
        bool found = false;
        for (const auto& cw : edge.colors) {
            if (cw.color == color) {
                weight += cw.weight;
                found = true;
                break;
            }
        }
        if (!found) return false;
        if (color < 0 || color >= cg.num_colors) return false;
        color_used[color] = 1;
    }
    for (int v = 0; v < cg.num_nodes; ++v)
        if (!matched[v]) return false;
    for (int c = 0; c < cg.num_colors; ++c)
        if (!color_used[c]) return false;
    if (weight != sol.weight || weight > cg.budget) return false;
    return true;
}

std::string dump_reduction(const OtrReduction& red) {
    std::ostringstream out;
    const auto& g = red.inst;
    out << "nodes " << g.num_nodes << " classes " << g.num_classes << "\n";
    for (int v = 0; v < g.num_nodes; ++v)
        out << "node " << v << " class " << g.node_class[v] << "\n";
    out << "edges " << g.edges.size() << "\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out << "edge " << g.edges[e].first << " " << g.edges[e].second << " " << g.weights[e]
            << "\n";
    out << "pattern " << g.pattern.size() << "\n";
    for (const auto& pe : g.pattern) out << "pedge " << pe.a << " " << pe.b << "\n";
    out << "budget " << g.budget << "\n";
    return out.str();
}

} // namespace rainbowpack::otr
