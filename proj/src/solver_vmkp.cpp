#include "rainbowpack/solver_vmkp.hpp"

#include "rainbowpack/errors.hpp"
#include "rainbowpack/partitions.hpp"
#include "rainbowpack/smallness.hpp"

#include <algorithm>
#include <numeric>

namespace rainbowpack::vmkp {

namespace {

RationalVec group_load(const Instance& inst, const std::vector<int>& group) {
    RationalVec load(inst.dimension, Rational(0));
    for (int item : group) load = vec_add(load, inst.vectors[item]);
    return load;
}

struct SharedGraph {
    otr::ColoredGraph graph;
    int top_id = -1;
    int bottom_id = -1;
};

// All group colors plus the empty-container color; finalized groups are
// handled by deleting their color in the query lattice.
SharedGraph build_shared_graph(const Instance& inst, const std::vector<int>& large,
                               const std::vector<RationalVec>& residuals, int receiving,
                               long long p_max) {
    const int L = static_cast<int>(large.size());
    const int groups = static_cast<int>(residuals.size());
    const int blockers = 2 * L - 2 * receiving;
    const auto& profits = *inst.profits;

    SharedGraph shared;
    shared.top_id = groups;
    shared.bottom_id = blockers > 0 ? groups + 1 : -1;

    auto& g = shared.graph;
    g.num_nodes = 2 * L + blockers;
    g.num_colors = groups + 1 + (shared.bottom_id >= 0 ? 1 : 0);
    g.budget = 2ll * receiving * p_max;
    g.max_weight_hint = g.budget;

    auto fitting_colors = [&](const RationalVec& need, long long weight) {
        std::vector<otr::ColorWeight> list;
        for (int c = 0; c < groups; ++c)
            if (vec_le(need, residuals[c])) list.push_back({c, weight});
        if (vec_le(need, inst.capacity)) list.push_back({shared.top_id, weight});
        return list;
    };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            long long weight = 2 * p_max - profits[large[i]] - profits[large[j]];
            auto colors =
                fitting_colors(vec_add(inst.vectors[large[i]], inst.vectors[large[j]]), weight);
            if (!colors.empty()) g.edges.push_back({i, j, std::move(colors)});
        }
    }
    for (int i = 0; i < L; ++i) {
        auto colors = fitting_colors(inst.vectors[large[i]], 2 * p_max - profits[large[i]]);
        if (!colors.empty()) g.edges.push_back({i, L + i, std::move(colors)});
    }
    for (int i = 0; i < 2 * L; ++i)
        for (int b = 0; b < blockers; ++b)
            g.edges.push_back({i, 2 * L + b, {{shared.bottom_id, 0}}});
    return shared;
}

struct AcceptedGuess {
    KnapsackGuess guess;
    OtrBuild build;
    std::uint64_t seed;
    long long profit = 0;
    long long matching_weight = 0;
    bool smalls_only = false;
};

} // namespace

std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const KnapsackGuess& guess) {
    if (!inst.profits || !inst.containers) return std::nullopt;
    const int L = static_cast<int>(large.size());
    const long long C = *inst.containers;
    const int group_count = static_cast<int>(guess.groups.size());
    if (group_count > C) return std::nullopt;
    if (guess.empty_used < 0 || guess.empty_used > C - group_count) return std::nullopt;

    std::vector<char> is_final(group_count, 0);
    for (int g : guess.finalized) is_final[g] = 1;
    const int receiving =
        group_count - static_cast<int>(guess.finalized.size()) + guess.empty_used;
    if (receiving < 1 || receiving > L) return std::nullopt;

    const auto& profits = *inst.profits;
    long long p_max = 0;
    for (int i : large) p_max = std::max(p_max, profits[i]);

    OtrBuild build;
    build.num_large = L;
    build.receiving = receiving;
    build.p_max = p_max;

    for (int g = 0; g < group_count; ++g) {
        RationalVec load = group_load(inst, guess.groups[g]);
        if (!vec_le(load, inst.capacity)) return std::nullopt;
        if (is_final[g]) continue;
        vp::ColorSpec spec;
        spec.id = static_cast<int>(build.colors.size());
        spec.kind = vp::ColorSpec::Kind::partial;
        spec.residual = vec_sub(inst.capacity, load);
        spec.group = g;
        build.colors.push_back(std::move(spec));
    }
    if (guess.empty_used > 0) {
        vp::ColorSpec top;
        top.id = static_cast<int>(build.colors.size());
        top.kind = vp::ColorSpec::Kind::top;
        top.residual = inst.capacity;
        build.colors.push_back(std::move(top));
    }
    const int blockers = 2 * L - 2 * receiving;
    int bottom_color = -1;
    if (blockers > 0) {
        vp::ColorSpec bottom;
        bottom.id = static_cast<int>(build.colors.size());
        bottom.kind = vp::ColorSpec::Kind::bottom;
        bottom_color = bottom.id;
        build.colors.push_back(std::move(bottom));
    }

    auto& g = build.graph;
    g.num_nodes = 2 * L + blockers;
    g.num_colors = static_cast<int>(build.colors.size());
    g.budget = 2ll * receiving * p_max;
    g.max_weight_hint = g.budget;

    auto fitting_colors = [&](const RationalVec& need, long long weight) {
        std::vector<otr::ColorWeight> list;
        for (const auto& spec : build.colors) {
            if (spec.kind == vp::ColorSpec::Kind::bottom) continue;
            if (vec_le(need, spec.residual)) list.push_back({spec.id, weight});
        }
        return list;
    };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            long long weight = 2 * p_max - profits[large[i]] - profits[large[j]];
            auto colors =
                fitting_colors(vec_add(inst.vectors[large[i]], inst.vectors[large[j]]), weight);
            if (!colors.empty()) g.edges.push_back({i, j, std::move(colors)});
        }
    }
    for (int i = 0; i < L; ++i) {
        auto colors = fitting_colors(inst.vectors[large[i]], 2 * p_max - profits[large[i]]);
        if (!colors.empty()) g.edges.push_back({i, L + i, std::move(colors)});
    }
    for (int i = 0; i < 2 * L; ++i)
        for (int b = 0; b < blockers; ++b)
            g.edges.push_back({i, 2 * L + b, {{bottom_color, 0}}});
    return build;
}

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
    if (!inst.profits || !inst.containers)
        throw std::invalid_argument("knapsack mode requires profits and a container count");
    const auto& profits = *inst.profits;
    const long long C = *inst.containers;

    SolveResult result;
    result.assignment.placement.assign(inst.n(), std::nullopt);
    result.assignment.objective = 0;
    if (C == 0 || inst.n() == 0) return result;

    auto sm = smallness::split_small_large(inst, Mode::pack);
    result.k = sm.k;
    const int L = static_cast<int>(sm.large.size());

    long long p_max = 0;
    for (int i : sm.large) p_max = std::max(p_max, profits[i]);

    // Upper bound helper: at most two large vectors per receiving container.
    std::vector<long long> large_profits;
    for (int i : sm.large) large_profits.push_back(profits[i]);
    std::sort(large_profits.rbegin(), large_profits.rend());
    std::vector<long long> prefix(large_profits.size() + 1, 0);
    for (std::size_t i = 0; i < large_profits.size(); ++i)
        prefix[i + 1] = prefix[i] + large_profits[i];
    auto best_large_profit = [&](int receiving) {
        return prefix[std::min<std::size_t>(large_profits.size(),
                                            static_cast<std::size_t>(2) * receiving)];
    };

    std::optional<AcceptedGuess> best;
    auto consider_smalls_only = [&](const KnapsackGuess& guess, long long small_profit) {
        if (!best || small_profit > best->profit) {
            AcceptedGuess acc;
            acc.guess = guess;
            acc.profit = small_profit;
            acc.smalls_only = true;
            best = std::move(acc);
        }
    };

    const int k = sm.k;
    for (std::uint32_t chosen_mask = 0; chosen_mask < (1u << k); ++chosen_mask) {
        KnapsackGuess guess;
        long long small_profit = 0;
        for (int i = 0; i < k; ++i) {
            if ((chosen_mask >> i) & 1) {
                guess.chosen.push_back(sm.small[i]);
                small_profit += profits[sm.small[i]];
            }
        }
        long long subset_bound =
            small_profit + best_large_profit(static_cast<int>(std::min<long long>(C, L)));
        if (best && subset_bound <= best->profit) continue;

        int partition_counter = 0;
        const int chosen_count = static_cast<int>(guess.chosen.size());
        for_each_partition(
            chosen_count,
            std::max(1, static_cast<int>(std::min<long long>(C, chosen_count))),
            [&](const std::vector<std::vector<int>>& blocks) {
                ++partition_counter;
                guess.groups.clear();
                for (const auto& block : blocks) {
                    std::vector<int> group;
                    for (int pos : block) group.push_back(guess.chosen[pos]);
                    guess.groups.push_back(std::move(group));
                }
                const int group_count = static_cast<int>(guess.groups.size());
                if (group_count > C) return true;

                std::vector<RationalVec> residuals;
                for (const auto& group : guess.groups) {
                    RationalVec load = group_load(inst, group);
                    if (!vec_le(load, inst.capacity)) return true; // over-packed group
                    residuals.push_back(vec_sub(inst.capacity, load));
                }

                // All large vectors unplaced, every group finalized.
                {
                    KnapsackGuess smalls_guess = guess;
                    smalls_guess.finalized.resize(group_count);
                    std::iota(smalls_guess.finalized.begin(), smalls_guess.finalized.end(), 0);
                    consider_smalls_only(smalls_guess, small_profit);
                }
                if (L == 0) return true;

                for (int receiving = 1; receiving <= std::min<long long>(C, L); ++receiving) {
                    if (best && small_profit + best_large_profit(receiving) <= best->profit)
                        continue;
                    auto shared =
                        build_shared_graph(inst, sm.large, residuals, receiving, p_max);
                    std::uint64_t salt = (chosen_mask * 0x1003ull) ^
                                         (static_cast<std::uint64_t>(partition_counter) << 24) ^
                                         (static_cast<std::uint64_t>(receiving) << 48);
                    std::uint64_t seed = derive_seed(opts.seed, salt);
                    otr::RainbowDecider decider(shared.graph, seed, opts);

                    for (std::uint32_t fmask = 0; fmask < (1u << group_count); ++fmask) {
                        int finalized = __builtin_popcount(fmask);
                        int empty_used = receiving - (group_count - finalized);
                        if (empty_used < 0 || empty_used > C - group_count) continue;

                        std::uint32_t deleted = 0, required = 0;
                        for (int g = 0; g < group_count; ++g) {
                            if ((fmask >> g) & 1)
                                deleted |= 1u << g;
                            else
                                required |= 1u << g;
                        }
                        if (empty_used > 0)
                            required |= 1u << shared.top_id;
                        else
                            deleted |= 1u << shared.top_id;
                        if (shared.bottom_id >= 0) required |= 1u << shared.bottom_id;

                        auto w = decider.query(deleted, required, shared.graph.budget);
                        if (!w) continue;
                        long long profit = small_profit + 2ll * receiving * p_max - *w;
                        if (!best || profit > best->profit) {
                            AcceptedGuess acc;
                            acc.guess = guess;
                            for (int g = 0; g < group_count; ++g)
                                if ((fmask >> g) & 1) acc.guess.finalized.push_back(g);
                            acc.guess.empty_used = empty_used;
                            acc.profit = profit;
                            acc.matching_weight = *w;
                            auto witness = build_otr_instance(inst, sm.large, acc.guess);
                            if (!witness) continue;
                            acc.build = std::move(*witness);
                            acc.seed = derive_seed(seed, fmask * 31 + 7);
                            best = std::move(acc);
                        }
                    }
                }
                return true;
            });
    }

    if (!best) return result; // no feasible branch packs anything

    result.profit = best->profit;
    result.accepted_guess = best->guess;
    Assignment asg;
    asg.placement.assign(inst.n(), std::nullopt);
    const int group_count = static_cast<int>(best->guess.groups.size());
    for (int g = 0; g < group_count; ++g)
        for (int item : best->guess.groups[g]) asg.placement[item] = g + 1;

    long long packed_large_profit = 0;
    if (!best->smalls_only) {
        auto sol = otr::solve(best->build.graph, best->seed, opts);
        if (!sol || sol->weight != best->matching_weight)
            throw RandomizedFailure("witness extraction disagreed with accepted knapsack guess");
        int next_fresh = group_count + 1;
        std::vector<char> color_used(best->build.colors.size(), 0);
        const int Lb = best->build.num_large;
        for (const auto& [edge_idx, color] : sol->matching) {
            const auto& spec = best->build.colors[color];
            if (spec.kind == vp::ColorSpec::Kind::bottom) continue;
            int container;
            if (spec.kind == vp::ColorSpec::Kind::partial && !color_used[color]) {
                container = spec.group + 1;
                color_used[color] = 1;
            } else {
                container = next_fresh++;
            }
            const auto& edge = best->build.graph.edges[edge_idx];
            if (edge.v == edge.u + Lb) {
                asg.placement[sm.large[edge.u]] = container;
                packed_large_profit += profits[sm.large[edge.u]];
            } else {
                asg.placement[sm.large[edge.u]] = container;
                asg.placement[sm.large[edge.v]] = container;
                packed_large_profit +=
                    profits[sm.large[edge.u]] + profits[sm.large[edge.v]];
            }
        }
        result.duality_lhs = best->matching_weight + packed_large_profit;
        result.duality_rhs = 2ll * best->build.receiving * best->build.p_max;
        if (result.duality_lhs != result.duality_rhs)
            throw RandomizedFailure("profit-weight duality violated by extracted matching");
    }

    long long small_profit = 0;
    for (int item : best->guess.chosen) small_profit += profits[item];
    asg.objective = small_profit + packed_large_profit;
    if (asg.objective != best->profit)
        throw RandomizedFailure("translated profit disagrees with accepted decision");
    result.assignment = std::move(asg);
    return result;
}

} // namespace rainbowpack::vmkp
