#include "rainbowpack/solver_vp.hpp"

#include "rainbowpack/errors.hpp"
#include "rainbowpack/partitions.hpp"
#include "rainbowpack/smallness.hpp"

#include <algorithm>
#include <map>

namespace rainbowpack::vp {

namespace {

long long volume_lower_bound(const Instance& inst) {
    long long bound = 1;
    for (int d = 0; d < inst.dimension; ++d) {
        if (inst.capacity[d].is_zero()) continue; // coordinates are zero too, or infeasible
        Rational total(0);
        for (const auto& v : inst.vectors) total += v[d];
        bound = std::max(bound, (total / inst.capacity[d]).ceil_to_int());
    }
    return bound;
}

RationalVec group_load(const Instance& inst, const std::vector<int>& group) {
    RationalVec load(inst.dimension, Rational(0));
    for (int item : group) load = vec_add(load, inst.vectors[item]);
    return load;
}

struct AcceptedGuess {
    GuessState guess;
    OtrBuild build;
    std::uint64_t seed;
};

// Translation of an accepted rainbow matching back into container indices.
Assignment translate(const Instance& inst, const std::vector<int>& large,
                     const AcceptedGuess& acc, const otr::RainbowSolution& sol, int containers) {
    Assignment out;
    out.placement.assign(inst.n(), std::nullopt);
    const int L = acc.build.num_large;
    const int group_count = static_cast<int>(acc.guess.groups.size());

    for (int g = 0; g < group_count; ++g)
        for (int item : acc.guess.groups[g]) out.placement[item] = g + 1;

    int next_fresh = group_count + 1;
    std::vector<int> color_container(acc.build.colors.size(), 0);
    for (const auto& [edge_idx, color] : sol.matching) {
        const auto& spec = acc.build.colors[color];
        if (spec.kind == ColorSpec::Kind::bottom) continue;
        int container;
        if (spec.kind == ColorSpec::Kind::partial && color_container[color] == 0) {
            container = spec.group + 1;
            color_container[color] = container;
        } else {
            container = next_fresh++; // repeated color or the empty-container color
        }
        const auto& edge = acc.build.graph.edges[edge_idx];
        if (edge.v == edge.u + L) {
            out.placement[large[edge.u]] = container;
        } else {
            out.placement[large[edge.u]] = container;
            out.placement[large[edge.v]] = container;
        }
    }
    out.objective = containers;
    return out;
}

} // namespace

std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const GuessState& guess, int containers) {
    const int L = static_cast<int>(large.size());
    const int c0 = static_cast<int>(guess.finalized.size());
    const int receiving = containers - c0;
    const int c2 = L - receiving;
    const int c1 = 2 * receiving - L;
    if (c2 < 0 || c1 < 0) return std::nullopt;

    std::vector<char> is_final(guess.groups.size(), 0);
    for (int g : guess.finalized) is_final[g] = 1;

    OtrBuild build;
    build.num_large = L;
    build.c0 = c0;
    build.c1 = c1;
    build.c2 = c2;

    for (std::size_t g = 0; g < guess.groups.size(); ++g) {
        RationalVec load = group_load(inst, guess.groups[g]);
        if (!vec_le(load, inst.capacity)) return std::nullopt; // over-packed group
        if (is_final[g]) continue;
        ColorSpec spec;
        spec.id = static_cast<int>(build.colors.size());
        spec.kind = ColorSpec::Kind::partial;
        spec.residual = vec_sub(inst.capacity, load);
        spec.group = static_cast<int>(g);
        build.colors.push_back(std::move(spec));
    }
    const int partials = static_cast<int>(build.colors.size());
    if (partials > receiving) return std::nullopt; // each partial needs a large vector

    if (receiving > partials) {
        ColorSpec top;
        top.id = partials;
        top.kind = ColorSpec::Kind::top;
        top.residual = inst.capacity;
        build.colors.push_back(std::move(top));
    }
    int bottom_color = -1;
    if (c2 > 0) {
        ColorSpec bottom;
        bottom.id = static_cast<int>(build.colors.size());
        bottom.kind = ColorSpec::Kind::bottom;
        bottom_color = bottom.id;
        build.colors.push_back(std::move(bottom));
    }

    auto& g = build.graph;
    g.num_nodes = 2 * L + 2 * c2;
    g.num_colors = static_cast<int>(build.colors.size());
    g.budget = static_cast<long long>(L) + c2;
    g.max_weight_hint = g.budget; // every perfect matching has exactly this weight

    auto fitting_colors = [&](const RationalVec& need) {
        std::vector<otr::ColorWeight> list;
        for (const auto& spec : build.colors) {
            if (spec.kind == ColorSpec::Kind::bottom) continue;
            if (vec_le(need, spec.residual)) list.push_back({spec.id, 1});
        }
        return list;
    };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            auto colors = fitting_colors(vec_add(inst.vectors[large[i]], inst.vectors[large[j]]));
            if (!colors.empty()) g.edges.push_back({i, j, std::move(colors)});
        }
    }
    for (int i = 0; i < L; ++i) {
        auto colors = fitting_colors(inst.vectors[large[i]]);
        if (!colors.empty()) g.edges.push_back({i, L + i, std::move(colors)});
    }
    if (c2 > 0) {
        for (int i = 0; i < L; ++i)
            for (int b = 0; b < 2 * c2; ++b)
                g.edges.push_back({L + i, 2 * L + b, {{bottom_color, 1}}});
    }
    return build;
}

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
    SolveResult result;
    if (inst.n() == 0) {
        result.assignment.objective = 0;
        return result;
    }
    for (int i = 0; i < inst.n(); ++i)
        if (!vec_le(inst.vectors[i], inst.capacity))
            throw InfeasibleError("vector " + std::to_string(i) + " exceeds the capacity alone");

    auto sm = smallness::split_small_large(inst, Mode::pack);
    result.k = sm.k;
    const int L = static_cast<int>(sm.large.size());

    long long lo = std::max<long long>({1, (L + 1) / 2, volume_lower_bound(inst)});
    long long hi = inst.n();

    std::map<long long, AcceptedGuess> accepted;
    auto decide = [&](long long containers) -> bool {
        if (accepted.count(containers)) return true;
        int partition_counter = 0;
        bool found = false;
        for_each_partition(
            sm.k, static_cast<int>(std::min<long long>(containers, sm.k)),
            [&](const std::vector<std::vector<int>>& blocks) {
                ++partition_counter;
                GuessState guess;
                for (const auto& block : blocks) {
                    std::vector<int> group;
                    for (int pos : block) group.push_back(sm.small[pos]);
                    guess.groups.push_back(std::move(group));
                }
                for (const auto& group : guess.groups)
                    if (!vec_le(group_load(inst, group), inst.capacity)) return true; // over-packed
                const int blocks_count = static_cast<int>(guess.groups.size());
                for (std::uint32_t fmask = 0; fmask < (1u << blocks_count); ++fmask) {
                    guess.finalized.clear();
                    for (int b = 0; b < blocks_count; ++b)
                        if ((fmask >> b) & 1) guess.finalized.push_back(b);
                    auto build = build_otr_instance(inst, sm.large, guess,
                                                    static_cast<int>(containers));
                    if (!build) continue;
                    std::uint64_t salt = (static_cast<std::uint64_t>(containers) << 40) ^
                                         (static_cast<std::uint64_t>(partition_counter) << 20) ^
                                         fmask;
                    std::uint64_t seed = derive_seed(opts.seed, salt);
                    if (otr::decide(build->graph, seed, opts)) {
                        accepted[containers] = {guess, std::move(*build), seed};
                        found = true;
                        return false;
                    }
                }
                return true;
            });
        return found;
    };

    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (decide(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!decide(lo))
        throw RandomizedFailure("packing decision failed at the upper bound C=" +
                                std::to_string(lo));

    const AcceptedGuess& acc = accepted.at(lo);
    auto sol = otr::solve(acc.build.graph, acc.seed, opts);
    if (!sol)
        throw RandomizedFailure("witness extraction disagreed with the accepted guess at C=" +
                                std::to_string(lo));
    result.containers = static_cast<int>(lo);
    result.accepted_guess = acc.guess;
    result.assignment = translate(inst, sm.large, acc, *sol, static_cast<int>(lo));
    return result;
}

} // namespace rainbowpack::vp
