#ifndef RAINBOWPACK_SOLVER_VMKP_HPP
#define RAINBOWPACK_SOLVER_VMKP_HPP

#include "rainbowpack/config.hpp"
#include "rainbowpack/instance.hpp"
#include "rainbowpack/otr.hpp"
#include "rainbowpack/solver_vp.hpp"

#include <optional>
#include <vector>

namespace rainbowpack::vmkp {

// One knapsack branch: which small vectors are packed at all, how they
// group into containers, which of those containers are finalized (take no
// large vector), and how many empty containers receive large vectors.
struct KnapsackGuess {
    std::vector<int> chosen;              // packed small vectors, original indices
    std::vector<std::vector<int>> groups; // partition of `chosen`
    std::vector<int> finalized;           // group indices, ascending
    int empty_used = 0;                   // empty containers that receive large vectors
};

struct OtrBuild {
    otr::ColoredGraph graph;
    std::vector<vp::ColorSpec> colors;
    int num_large = 0;   // nodes: [0, L) originals, [L, 2L) copies, rest blockers
    int receiving = 0;   // U: containers that receive at least one large vector
    long long p_max = 0; // largest profit among large vectors
};

// Profit-weighted packing graph: an edge packing vectors of total profit p
// weighs 2*p_max - p, so minimum matching weight is maximum packed profit.
std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const KnapsackGuess& guess);

struct SolveResult {
    Assignment assignment;
    long long profit = 0;
    int k = 0;
    KnapsackGuess accepted_guess;
    // Every accepting branch satisfies matching weight + packed large
    // profit == 2 * U * p_max; recorded here for in-run verification.
    long long duality_lhs = 0;
    long long duality_rhs = 0;
};

SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

} // namespace rainbowpack::vmkp

#endif
