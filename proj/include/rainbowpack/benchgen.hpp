#ifndef RAINBOWPACK_BENCHGEN_HPP
#define RAINBOWPACK_BENCHGEN_HPP

#include "rainbowpack/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace rainbowpack::benchgen {

// Deterministic instance families for the timing harness: n large items
// just below half the capacity (any two fit together, no three do) plus k
// tiny items.
inline Instance make_instance(const std::string& problem, int n, int k, std::uint64_t seed) {
    Instance inst;
    inst.dimension = 1;
    long long denom = 20ll * std::max(n, 1);
    inst.capacity = {problem == "cover" ? Rational(9, 10) : Rational(1)};
    for (int i = 0; i < n; ++i) {
        long long offset = static_cast<long long>((seed + i) % 2);
        inst.vectors.push_back({Rational(20ll * n - 2 * i - offset, 2 * denom)});
    }
    for (int j = 0; j < k; ++j)
        inst.vectors.push_back({Rational(1, 100ll * std::max(n, 1) + j)});
    if (problem == "knapsack") {
        std::vector<long long> profits;
        for (int i = 0; i < n + k; ++i)
            profits.push_back(static_cast<long long>((seed + i) % 10));
        inst.profits = profits;
        inst.containers = (n + 1) / 2;
    }
    return inst;
}

} // namespace rainbowpack::benchgen

#endif
