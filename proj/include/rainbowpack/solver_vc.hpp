#ifndef RAINBOWPACK_SOLVER_VC_HPP
#define RAINBOWPACK_SOLVER_VC_HPP

#include "rainbowpack/config.hpp"
#include "rainbowpack/instance.hpp"
#include "rainbowpack/otr.hpp"
#include "rainbowpack/solver_vp.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rainbowpack::vc {

// One covering branch. Containers fully covered by their small group are
// removed up front; the remaining partially covered ones either keep a
// color (covered by one or two large vectors) or appear in `dropped`
// (covered by three large vectors, which cover any residual demand, so no
// color is needed). `empty_doubles` counts empty containers covered by a
// pair; the remaining empty containers take three large vectors each, and
// any surplus large vectors are junk.
struct CoverGuess {
    std::vector<std::vector<int>> groups; // small partition, original item indices
    int target = 0;                       // number of containers to cover
    std::vector<int> dropped;             // partial group indices without a color
    int singles = 0;                      // containers covered by exactly one large vector
    int empty_doubles = 0;                // empty containers covered by a pair
};

struct CoverCounts {
    std::vector<int> fully_covered; // group indices with load >= T
    std::vector<int> partial;       // group indices still needing large vectors
    int c_prime = 0;                // containers left to cover
    int c2 = 0;                     // pair-covered containers (partial + empty)
    int c3 = 0;                     // triple-covered containers (dropped + empty)
    int empty_triples = 0;
    int junk = 0;                   // large vectors outside covered containers
    int b1 = 0, b2 = 0;             // blocker set sizes
};

struct OtrBuild {
    otr::ColoredGraph graph;
    std::vector<vp::ColorSpec> colors;
    CoverCounts counts;
    int num_large = 0; // nodes: [0, L) originals, [L, 2L) copies, then B1, then B2
};

// Removes every vector that covers a container alone; each goes into its
// own covered container.
std::pair<Instance, int> preprocess_singletons(const Instance& inst);

std::optional<OtrBuild> build_otr_instance(const Instance& inst, const std::vector<int>& large,
                                           const CoverGuess& guess);

struct SolveResult {
    Assignment assignment;
    int covered = 0;
    int k = 0;
    CoverGuess accepted_guess;
};

// Maximum-coverage vector covering: binary search over the covered count,
// guess enumeration, randomized matching decisions at exact-use budgets.
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

} // namespace rainbowpack::vc

#endif
