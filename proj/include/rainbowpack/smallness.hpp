#ifndef RAINBOWPACK_SMALLNESS_HPP
#define RAINBOWPACK_SMALLNESS_HPP

#include "rainbowpack/instance.hpp"

#include <array>
#include <optional>
#include <vector>

namespace rainbowpack::smallness {

// Unordered triple of distinct object indices, stored ascending. In pack
// mode the three vectors fit together in one container; in cover mode they
// fail to cover one (some dimension stays below demand).
struct FitTriple {
    std::array<int, 3> idx;
    bool operator==(const FitTriple& o) const { return idx == o.idx; }
};

struct HittingSetResult {
    std::optional<std::vector<int>> set; // ascending indices; nullopt if > k_max
    // Leaves of the successful depth-bounded search; bounded by 3^k.
    long long leaves_final = 0;
    // Leaves across all iterative-deepening rounds.
    long long leaves_total = 0;
};

struct SmallnessResult {
    std::vector<int> small; // V_S, ascending
    std::vector<int> large; // V_L, ascending
    int k = 0;
    HittingSetResult stats;
};

// All O(n^3) triples satisfying the mode condition, in lexicographic order.
std::vector<FitTriple> enumerate_fit_triples(const Instance& inst, Mode mode);

// Minimum hitting set via plain 3-way branching with iterative deepening.
// Deterministic: branch order is triple list order, element order ascending.
HittingSetResult min_hitting_set_3(const std::vector<FitTriple>& triples, int k_max);

// Partition of the objects into a largest 3-incompatible set (large) and
// its complement (small); k = |small| is the parameter everything else is
// exponential in.
SmallnessResult split_small_large(const Instance& inst, Mode mode);

} // namespace rainbowpack::smallness

#endif
