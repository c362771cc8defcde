#ifndef RAINBOWPACK_SOLVER_VP_HPP
#define RAINBOWPACK_SOLVER_VP_HPP

#include "rainbowpack/config.hpp"
#include "rainbowpack/instance.hpp"
#include "rainbowpack/otr.hpp"

#include <optional>
#include <vector>

namespace rainbowpack::vp {

// A color of the packing graph: either a partially filled container with
// its residual capacity, the shared "empty container" color, or the
// blocker color.
struct ColorSpec {
    enum class Kind { partial, top, bottom };
    int id = 0;
    Kind kind = Kind::partial;
    RationalVec residual;
    int group = -1; // partial container (group index) this color stands for
};

// One enumeration branch: a partition of the small vectors into partial
// containers plus the subset of them that is finalized (receives no large
// vector).
struct GuessState {
    std::vector<std::vector<int>> groups; // original item indices per partial container
    std::vector<int> finalized;           // group indices, ascending
};

struct OtrBuild {
    otr::ColoredGraph graph;
    std::vector<ColorSpec> colors;
    int num_large = 0; // nodes: [0, L) originals, [L, 2L) copies, rest blockers
    int c0 = 0, c1 = 0, c2 = 0;
};

// The packing graph for one guess, or nullopt when the counting invariants
// reject the guess. Nodes are the large vectors and their copies plus 2*C2
// blockers; every edge has unit weight and the budget is |V_L| + C2.
std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const GuessState& guess, int containers);

struct SolveResult {
    Assignment assignment;
    int containers = 0;
    int k = 0;
    GuessState accepted_guess;
};

// Minimum-container vector packing: binary search over the container
// count, guess enumeration, one randomized matching decision per guess.
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

} // namespace rainbowpack::vp

#endif
