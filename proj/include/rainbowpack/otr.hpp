#ifndef RAINBOWPACK_OTR_HPP
#define RAINBOWPACK_OTR_HPP

#include "rainbowpack/config.hpp"
#include "rainbowpack/conjoining.hpp"
#include "rainbowpack/engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rainbowpack::otr {

// One admissible color of an edge together with its weight.
struct ColorWeight {
    int color = 0;
    long long weight = 0;
};

// lambda(e) is the color list (never empty), gamma(e, c) the weight.
struct ColoredEdge {
    int u = 0;
    int v = 0;
    std::vector<ColorWeight> colors;
};

struct ColoredGraph {
    int num_nodes = 0;
    std::vector<ColoredEdge> edges;
    int num_colors = 0;
    long long budget = 0;
    // Optional upper bound on the weight of any perfect matching under any
    // coloring; supplied by callers that know the construction.
    std::optional<long long> max_weight_hint;
};

// Perfect matching plus one chosen color per matched edge, surjective onto
// the color set.
struct RainbowSolution {
    std::vector<std::pair<int, int>> matching; // (edge index, color)
    long long weight = 0;
};

// Reduction to conjoining matching: one copy of the graph per color, a
// knock-out independent set J(v) of size |colors|-1 per node, one pattern
// self-loop per copy class, and a pattern-isolated class for the union of
// the J(v).
struct OtrReduction {
    conjoining::ConjoiningInstance inst;
    int orig_nodes = 0;
    int orig_colors = 0;
    std::vector<int> edge_orig_edge; // reduced edge -> colored edge index, -1 for knock-outs
    std::vector<int> edge_color;     // color of a copy edge, -1 for knock-outs
};

OtrReduction reduce_to_conjoining(const ColoredGraph& cg);

// Randomized decision core shared by the packing solvers. Colors are
// inclusion-exclusion axes; a query may additionally delete colors (their
// edge-color pairs become unusable) and relax which colors are required,
// so one Pfaffian table serves a whole lattice of related guesses.
class RainbowDecider {
public:
    RainbowDecider(const ColoredGraph& cg, std::uint64_t seed, const SolveOptions& opts);
    std::optional<long long> query(std::uint32_t deleted_mask, std::uint32_t required_mask,
                                   long long budget) const;

private:
    std::vector<alg::MatchingTable> tables_;
    int num_nodes_ = 0;
};

// Minimum weight of a perfect over-the-rainbow matching within the budget.
// One-sided error: never an understatement, feasibility missed with
// probability at most (n + budget)^-error_exponent.
std::optional<long long> decide(const ColoredGraph& cg, std::uint64_t seed,
                                const SolveOptions& opts = {});

// Decision plus witness extraction; the returned solution is re-validated
// deterministically. Throws RandomizedFailure when extraction keeps failing.
std::optional<RainbowSolution> solve(const ColoredGraph& cg, std::uint64_t seed,
                                     const SolveOptions& opts = {});

// The same contract routed through the conjoining reduction: reduce, layer
// away the pattern self-loops, decide and extract there, then map the
// matching back. Slower; kept as the reference pipeline.
std::optional<RainbowSolution> solve_via_conjoining(const ColoredGraph& cg, std::uint64_t seed,
                                                    const SolveOptions& opts = {});

// Exhaustive oracle over perfect matchings and colorings.
std::optional<RainbowSolution> brute_force(const ColoredGraph& cg, int node_cap = 16);

bool validate_rainbow(const ColoredGraph& cg, const RainbowSolution& sol);

// Text dump of a reduced instance for golden tests (documented in README).
std::string dump_reduction(const OtrReduction& red);

} // namespace rainbowpack::otr

#endif
