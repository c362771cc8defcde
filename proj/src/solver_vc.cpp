#include "rainbowpack/solver_vc.hpp"

#include "rainbowpack/errors.hpp"
#include "rainbowpack/partitions.hpp"
#include "rainbowpack/smallness.hpp"

#include <algorithm>
#include <map>

namespace rainbowpack::vc {

namespace {

RationalVec group_load(const Instance& inst, const std::vector<int>& group) {
    RationalVec load(inst.dimension, Rational(0));
    for (int item : group) load = vec_add(load, inst.vectors[item]);
    return load;
}

// Derived counting data for a guess; nullopt when the counts cannot be
// realized with the available large vectors.
std::optional<CoverCounts> derive_counts(const Instance& inst, int num_large,
                                         const CoverGuess& guess) {
    CoverCounts counts;
    std::vector<char> is_dropped(guess.groups.size(), 0);
    for (int g : guess.dropped) is_dropped[g] = 1;

    for (std::size_t g = 0; g < guess.groups.size(); ++g) {
        if (vec_ge(group_load(inst, guess.groups[g]), inst.capacity)) {
            if (is_dropped[g]) return std::nullopt; // only partial containers drop colors
            counts.fully_covered.push_back(static_cast<int>(g));
        } else {
            counts.partial.push_back(static_cast<int>(g));
        }
    }
    if (static_cast<int>(guess.groups.size()) > guess.target) return std::nullopt;
    counts.c_prime = guess.target - static_cast<int>(counts.fully_covered.size());

    const int c_p = static_cast<int>(counts.partial.size());
    const int kept = c_p - static_cast<int>(guess.dropped.size());
    if (kept < 0) return std::nullopt;
    if (guess.singles < 0 || guess.singles > kept) return std::nullopt;
    const int partial_doubles = kept - guess.singles;
    const int empties = counts.c_prime - c_p;
    if (empties < 0) return std::nullopt;
    if (guess.empty_doubles < 0 || guess.empty_doubles > empties) return std::nullopt;

    counts.c2 = partial_doubles + guess.empty_doubles;
    counts.empty_triples = empties - guess.empty_doubles;
    counts.c3 = static_cast<int>(guess.dropped.size()) + counts.empty_triples;
    counts.junk = num_large - guess.singles - 2 * counts.c2 - 3 * counts.c3;
    if (counts.junk < 0) return std::nullopt;
    counts.b1 = num_large - guess.singles;
    counts.b2 = num_large - guess.singles - 2 * counts.c2;
    return counts;
}

struct AcceptedGuess {
    CoverGuess guess;
    OtrBuild build;
    std::uint64_t seed;
    bool smalls_only = false;
};

Assignment translate(const Instance& inst, const std::vector<int>& large,
                     const AcceptedGuess& acc, const otr::RainbowSolution* sol) {
    Assignment out;
    out.placement.assign(inst.n(), std::nullopt);
    const auto& guess = acc.guess;
    const int group_count = static_cast<int>(guess.groups.size());
    for (int g = 0; g < group_count; ++g)
        for (int item : guess.groups[g]) out.placement[item] = g + 1;
    int next_fresh = group_count + 1;

    std::vector<char> in_colored_edge(large.size(), 0);
    if (sol) {
        const int L = acc.build.num_large;
        for (const auto& [edge_idx, color] : sol->matching) {
            const auto& spec = acc.build.colors[color];
            if (spec.kind == vp::ColorSpec::Kind::bottom) continue;
            int container;
            if (spec.kind == vp::ColorSpec::Kind::partial)
                container = spec.group + 1; // forced to appear exactly once
            else
                container = next_fresh++; // pair on an empty container
            const auto& edge = acc.build.graph.edges[edge_idx];
            if (edge.v == edge.u + L) {
                out.placement[large[edge.u]] = container;
                in_colored_edge[edge.u] = 1;
            } else {
                out.placement[large[edge.u]] = container;
                out.placement[large[edge.v]] = container;
                in_colored_edge[edge.u] = in_colored_edge[edge.v] = 1;
            }
        }
    }

    // Large vectors outside colored edges: three per dropped partial (any
    // three large vectors cover any residual demand), three per remaining
    // empty container, junk into the first container.
    auto counts = derive_counts(inst, static_cast<int>(large.size()), guess);
    if (!counts) throw std::logic_error("accepted cover guess fails its own counting");
    std::vector<int> rest;
    for (std::size_t i = 0; i < large.size(); ++i)
        if (!in_colored_edge[i]) rest.push_back(static_cast<int>(i));
    std::size_t pos = 0;
    for (int g : guess.dropped)
        for (int t = 0; t < 3; ++t) out.placement[large[rest[pos++]]] = g + 1;
    for (int e = 0; e < counts->empty_triples; ++e) {
        int container = next_fresh++;
        for (int t = 0; t < 3; ++t) out.placement[large[rest[pos++]]] = container;
    }
    int junk_container = guess.target >= 1 ? 1 : next_fresh;
    while (pos < rest.size()) out.placement[large[rest[pos++]]] = junk_container;

    out.objective = guess.target;
    return out;
}

// Decision graph shared by every guess with the same blocker counts: all
// partial colors plus the empty-pair color are present, queries delete the
// inactive ones.
struct SharedGraph {
    otr::ColoredGraph graph;
    int top_id = -1;
    int bottom_id = -1;
};

SharedGraph build_shared_graph(const Instance& inst, const std::vector<int>& large,
                               const std::vector<RationalVec>& partial_residuals, int c1, int c2) {
    const int L = static_cast<int>(large.size());
    const int c_p = static_cast<int>(partial_residuals.size());
    const int b1 = L - c1;
    const int b2 = L - c1 - 2 * c2;

    SharedGraph shared;
    shared.top_id = c_p;
    shared.bottom_id = b1 + b2 > 0 ? c_p + 1 : -1;

    auto& g = shared.graph;
    g.num_nodes = 2 * L + b1 + b2;
    g.num_colors = c_p + 1 + (shared.bottom_id >= 0 ? 1 : 0);
    g.budget = c_p;
    g.max_weight_hint = c1 + c2; // exactly this many colored edges in any matching

    auto covering_colors = [&](const RationalVec& have, bool include_top) {
        std::vector<otr::ColorWeight> list;
        for (int c = 0; c < c_p; ++c)
            if (vec_ge(have, partial_residuals[c])) list.push_back({c, 1});
        if (include_top && vec_ge(have, inst.capacity)) list.push_back({shared.top_id, 0});
        return list;
    };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            auto colors =
                covering_colors(vec_add(inst.vectors[large[i]], inst.vectors[large[j]]), true);
            if (!colors.empty()) g.edges.push_back({i, j, std::move(colors)});
        }
    }
    for (int i = 0; i < L; ++i) {
        auto colors = covering_colors(inst.vectors[large[i]], true);
        if (!colors.empty()) g.edges.push_back({i, L + i, std::move(colors)});
    }
    const int b1_base = 2 * L;
    for (int i = 0; i < L; ++i)
        for (int b = 0; b < b1; ++b)
            g.edges.push_back({L + i, b1_base + b, {{shared.bottom_id, 0}}});
    const int b2_base = 2 * L + b1;
    for (int i = 0; i < L; ++i)
        for (int b = 0; b < b2; ++b)
            g.edges.push_back({i, b2_base + b, {{shared.bottom_id, 0}}});
    return shared;
}

} // namespace

std::pair<Instance, int> preprocess_singletons(const Instance& inst) {
    Instance reduced = inst;
    reduced.vectors.clear();
    int covered = 0;
    for (const auto& v : inst.vectors) {
        if (vec_ge(v, inst.capacity))
            ++covered;
        else
            reduced.vectors.push_back(v);
    }
    return {reduced, covered};
}

std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const CoverGuess& guess) {
    const int L = static_cast<int>(large.size());
    auto counts = derive_counts(inst, L, guess);
    if (!counts) return std::nullopt;

    OtrBuild build;
    build.num_large = L;
    build.counts = *counts;

    std::vector<char> is_dropped(guess.groups.size(), 0);
    for (int g : guess.dropped) is_dropped[g] = 1;
    for (int g : counts->partial) {
        if (is_dropped[g]) continue;
        vp::ColorSpec spec;
        spec.id = static_cast<int>(build.colors.size());
        spec.kind = vp::ColorSpec::Kind::partial;
        spec.residual = vec_sub_clamped(inst.capacity, group_load(inst, guess.groups[g]));
        spec.group = g;
        build.colors.push_back(std::move(spec));
    }
    const int kept = static_cast<int>(build.colors.size());
    if (guess.empty_doubles > 0) {
        vp::ColorSpec top;
        top.id = kept;
        top.kind = vp::ColorSpec::Kind::top;
        top.residual = inst.capacity;
        build.colors.push_back(std::move(top));
    }
    int bottom_color = -1;
    if (build.counts.b1 + build.counts.b2 > 0) {
        vp::ColorSpec bottom;
        bottom.id = static_cast<int>(build.colors.size());
        bottom.kind = vp::ColorSpec::Kind::bottom;
        bottom_color = bottom.id;
        build.colors.push_back(std::move(bottom));
    }

    auto& g = build.graph;
    g.num_nodes = 2 * L + build.counts.b1 + build.counts.b2;
    g.num_colors = static_cast<int>(build.colors.size());
    g.budget = kept;
    g.max_weight_hint = guess.singles + build.counts.c2; // colored edge count

    auto covering_colors = [&](const RationalVec& have) {
        std::vector<otr::ColorWeight> list;
        for (const auto& spec : build.colors) {
            if (spec.kind == vp::ColorSpec::Kind::bottom) continue;
            if (vec_ge(have, spec.residual))
                list.push_back({spec.id, spec.kind == vp::ColorSpec::Kind::partial ? 1ll : 0ll});
        }
        return list;
    };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            auto colors = covering_colors(vec_add(inst.vectors[large[i]], inst.vectors[large[j]]));
            if (!colors.empty()) g.edges.push_back({i, j, std::move(colors)});
        }
    }
    for (int i = 0; i < L; ++i) {
        auto colors = covering_colors(inst.vectors[large[i]]);
        if (!colors.empty()) g.edges.push_back({i, L + i, std::move(colors)});
    }
    const int b1_base = 2 * L;
    for (int i = 0; i < L; ++i)
        for (int b = 0; b < build.counts.b1; ++b)
            g.edges.push_back({L + i, b1_base + b, {{bottom_color, 0}}});
    const int b2_base = 2 * L + build.counts.b1;
    for (int i = 0; i < L; ++i)
        for (int b = 0; b < build.counts.b2; ++b)
            g.edges.push_back({i, b2_base + b, {{bottom_color, 0}}});
    return build;
}

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
    auto [reduced, pre_covered] = preprocess_singletons(inst);
    SolveResult result;

    auto sm = smallness::split_small_large(reduced, Mode::cover);
    result.k = sm.k;
    const int L = static_cast<int>(sm.large.size());
    const int n = reduced.n();

    std::map<long long, AcceptedGuess> accepted;

    auto decide = [&](long long target) -> bool {
        if (target == 0) return true;
        if (accepted.count(target)) return true;
        int partition_counter = 0;
        bool found = false;
        int max_blocks = sm.k == 0 ? 1 : static_cast<int>(std::min<long long>(target, sm.k));
        for_each_partition(sm.k, max_blocks, [&](const std::vector<std::vector<int>>& blocks) {
            ++partition_counter;
            CoverGuess base;
            base.target = static_cast<int>(target);
            for (const auto& block : blocks) {
                std::vector<int> group;
                for (int pos : block) group.push_back(sm.small[pos]);
                base.groups.push_back(std::move(group));
            }

            std::vector<int> partial;
            std::vector<RationalVec> residuals;
            int fully = 0;
            for (std::size_t g = 0; g < base.groups.size(); ++g) {
                RationalVec load = group_load(reduced, base.groups[g]);
                if (vec_ge(load, reduced.capacity)) {
                    ++fully;
                } else {
                    partial.push_back(static_cast<int>(g));
                    residuals.push_back(vec_sub_clamped(reduced.capacity, load));
                }
            }
            const int c_prime = static_cast<int>(target) - fully;
            const int c_p = static_cast<int>(partial.size());
            if (c_prime < 0) return true;
            if (c_prime == 0) {
                AcceptedGuess acc;
                acc.guess = base;
                acc.smalls_only = true;
                accepted[target] = std::move(acc);
                found = true;
                return false;
            }
            if (c_p > c_prime) return true;

            // One decision table per (singles, pair count); dropped-color
            // subsets and the empty-double split are lattice queries on it.
            for (int c1 = 0; c1 <= std::min(c_p, L) && !found; ++c1) {
                for (int c2 = 0; 2 * c2 <= L - c1 && !found; ++c2) {
                    struct Candidate {
                        std::uint32_t dropped_mask;
                        int empty_doubles;
                    };
                    std::vector<Candidate> candidates;
                    for (std::uint32_t dmask = 0; dmask < (1u << c_p); ++dmask) {
                        int dropped = __builtin_popcount(dmask);
                        int kept = c_p - dropped;
                        if (c1 > kept) continue;
                        int partial_doubles = kept - c1;
                        int empty_doubles = c2 - partial_doubles;
                        if (empty_doubles < 0 || empty_doubles > c_prime - c_p) continue;
                        int empty_triples = (c_prime - c_p) - empty_doubles;
                        int c3 = dropped + empty_triples;
                        if (L - c1 - 2 * c2 - 3 * c3 < 0) continue;
                        candidates.push_back({dmask, empty_doubles});
                    }
                    if (candidates.empty()) continue;

                    auto shared = build_shared_graph(reduced, sm.large, residuals, c1, c2);
                    std::uint64_t salt = (static_cast<std::uint64_t>(target) << 44) ^
                                         (static_cast<std::uint64_t>(partition_counter) << 24) ^
                                         (static_cast<std::uint64_t>(c1) << 16) ^
                                         (static_cast<std::uint64_t>(c2) << 8);
                    std::uint64_t seed = derive_seed(opts.seed, salt);
                    otr::RainbowDecider decider(shared.graph, seed, opts);

                    for (const auto& cand : candidates) {
                        std::uint32_t deleted = 0, required = 0;
                        for (int p = 0; p < c_p; ++p) {
                            if ((cand.dropped_mask >> p) & 1)
                                deleted |= 1u << p;
                            else
                                required |= 1u << p;
                        }
                        if (cand.empty_doubles > 0)
                            required |= 1u << shared.top_id;
                        else
                            deleted |= 1u << shared.top_id;
                        if (shared.bottom_id >= 0) required |= 1u << shared.bottom_id;
                        long long budget = c_p - __builtin_popcount(cand.dropped_mask);
                        auto w = decider.query(deleted, required, budget);
                        if (w && *w == budget) {
                            AcceptedGuess acc;
                            acc.guess = base;
                            acc.guess.singles = c1;
                            acc.guess.empty_doubles = cand.empty_doubles;
                            for (int p = 0; p < c_p; ++p)
                                if ((cand.dropped_mask >> p) & 1)
                                    acc.guess.dropped.push_back(partial[p]);
                            auto witness_build = build_otr_instance(reduced, sm.large, acc.guess);
                            if (!witness_build) continue; // counting mismatch, cannot happen
                            acc.build = std::move(*witness_build);
                            acc.seed = derive_seed(seed, cand.dropped_mask * 97 + 13);
                            accepted[target] = std::move(acc);
                            found = true;
                            break;
                        }
                    }
                }
            }
            return !found;
        });
        return found;
    };

    long long lo = 0;
    long long hi = n / 2;
    while (lo < hi) {
        long long mid = lo + (hi - lo + 1) / 2;
        if (decide(mid))
            lo = mid;
        else
            hi = mid - 1;
    }

    Assignment body;
    CoverGuess accepted_guess;
    if (lo == 0) {
        // each remaining vector alone: none covers (preprocessing removed
        // every vector dominating T)
        body.placement.assign(reduced.n(), std::nullopt);
        for (int i = 0; i < reduced.n(); ++i) body.placement[i] = i + 1;
        body.objective = 0;
        accepted_guess.target = 0;
    } else {
        AcceptedGuess& acc = accepted.at(lo);
        accepted_guess = acc.guess;
        if (acc.smalls_only) {
            body = translate(reduced, sm.large, acc, nullptr);
        } else {
            auto sol = otr::solve(acc.build.graph, acc.seed, opts);
            if (!sol)
                throw RandomizedFailure("witness extraction disagreed with accepted cover guess");
            body = translate(reduced, sm.large, acc, &*sol);
        }
    }

    // Re-attach the preprocessed singleton coverers: containers 1..s, the
    // rest shifted up.
    Assignment final_asg;
    final_asg.placement.assign(inst.n(), std::nullopt);
    int reduced_pos = 0, singleton = 0;
    for (int i = 0; i < inst.n(); ++i) {
        if (vec_ge(inst.vectors[i], inst.capacity)) {
            final_asg.placement[i] = ++singleton;
        } else {
            if (body.placement[reduced_pos])
                final_asg.placement[i] = *body.placement[reduced_pos] + pre_covered;
            ++reduced_pos;
        }
    }
    final_asg.objective = body.objective + pre_covered;
    result.covered = static_cast<int>(final_asg.objective);
    result.assignment = std::move(final_asg);
    result.accepted_guess = std::move(accepted_guess);
    return result;
}

} // namespace rainbowpack::vc
