#ifndef RAINBOWPACK_CONFIG_HPP
#define RAINBOWPACK_CONFIG_HPP

#include <cstdint>
#include <cstddef>

namespace rainbowpack {

// Knobs shared by every randomized component. All randomness flows from
// `seed`; identical options and inputs give identical outputs.
struct SolveOptions {
    std::uint64_t seed = 0;

    // False-negative target is (n + budget)^-error_exponent.
    int error_exponent = 2;

    // Witness extraction restarts with a fresh derived seed this many times
    // before reporting a randomized failure.
    int extract_retries = 3;

    // Test hook: probability that a single decision call artificially
    // reports "infeasible". Exercises the retry and failure paths.
    double fault_injection_rate = 0.0;

    // Interpolation degree limit; exceeding it raises CapacityError.
    std::size_t degree_cap = std::size_t{1} << 20;

    // Limit on 2^|axes| * (degree+1) Pfaffian evaluations per table.
    std::size_t table_cap = std::size_t{1} << 24;

    // Parallel evaluation width for the algebraic tables (1 = serial).
    int threads = 1;

    // Node cap for the exhaustive matching oracles.
    int brute_force_cap = 16;

    // Node-expansion budget for the combinatorial witness search tried
    // before algebraic self-reduction.
    std::size_t greedy_budget = 200000;
};

// Cheap seed derivation so concurrent branches get decorrelated streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull + salt * 0xbf58476d1ce4e5b9ull);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

} // namespace rainbowpack

#endif
