#ifndef RAINBOWPACK_CONJOINING_HPP
#define RAINBOWPACK_CONJOINING_HPP

#include "rainbowpack/config.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rainbowpack::conjoining {

// Pattern edge over partition classes; a == b is a self-loop demanding a
// matching edge inside class a.
struct PatternEdge {
    int a = 0;
    int b = 0;
};

struct ConjoiningInstance {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<long long> weights;        // parallel to edges, non-negative
    std::vector<int> node_class;           // partition V_1 ... V_t, zero-based
    int num_classes = 0;
    std::vector<PatternEdge> pattern;
    long long budget = 0;
    // Optional upper bound on the weight of any perfect matching; tightens
    // the interpolation degree when supplied by a caller that knows one.
    std::optional<long long> max_weight_hint;
};

// Loop-free layering of an instance whose pattern may contain self-loops.
// Nodes triple: v' = 3v, v'' = 3v+1, v* = 3v+2.
struct LayeredInstance {
    ConjoiningInstance inst;
    std::vector<int> edge_origin; // layered edge -> original edge index, -1 for star edges
    int orig_nodes = 0;
};

struct ConjoiningSolution {
    std::vector<int> matching_edges; // edge indices into the instance
    long long weight = 0;
    std::vector<int> satisfied_pattern; // pattern indices crossed
};

// Layering that removes pattern self-loops: each node becomes a triple,
// each pattern edge a cross edge between primed and double-primed classes,
// all stars share one pattern-isolated class. Feasibility and minimum
// weight are preserved.
LayeredInstance eliminate_self_loops(const ConjoiningInstance& inst);

// Randomized minimum-weight decision. Never reports a weight without a
// matching behind it; misses a feasible instance with probability at most
// (n + budget)^-error_exponent. Self-loops in the pattern are handled
// natively by the inclusion-exclusion, so layered and direct inputs agree.
std::optional<long long> decide_min_weight(const ConjoiningInstance& inst, std::uint64_t seed,
                                           const SolveOptions& opts = {});

// Search-to-decision self-reduction: walks the edges in input order,
// keeping an edge exactly when the residual decision still reaches the
// residual target. The result is re-validated deterministically; failures
// restart with fresh seeds and eventually throw RandomizedFailure.
ConjoiningSolution extract_matching(const ConjoiningInstance& inst, long long target_weight,
                                    std::uint64_t seed, const SolveOptions& opts = {});

// Exhaustive oracle, self-loops included. Throws CapacityError above the cap.
std::optional<ConjoiningSolution> brute_force_conjoining(const ConjoiningInstance& inst,
                                                         int node_cap = 16);

bool validate_solution(const ConjoiningInstance& inst, const ConjoiningSolution& sol);

} // namespace rainbowpack::conjoining

#endif
