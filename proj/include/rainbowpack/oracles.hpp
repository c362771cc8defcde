#ifndef RAINBOWPACK_ORACLES_HPP
#define RAINBOWPACK_ORACLES_HPP

#include "rainbowpack/instance.hpp"

namespace rainbowpack::oracles {

// Guard rails for the exhaustive reference solvers; they are correctness
// anchors, not production paths.
struct OracleBudget {
    int max_objects = 12;
    bool prune = true; // bound-based pruning; optima are unaffected
};

// Exact minimum container count by exhaustive assignment, containers
// opened in first-use order.
Assignment brute_force_pack(const Instance& inst, const OracleBudget& budget = {});

// Exact maximum number of covered containers.
Assignment brute_force_cover(const Instance& inst, const OracleBudget& budget = {});

// Exact maximum packed profit with unpacked objects allowed.
Assignment brute_force_knapsack(const Instance& inst, const OracleBudget& budget = {});

} // namespace rainbowpack::oracles

#endif
