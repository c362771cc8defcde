#include "rainbowpack/oracles.hpp"

#include "rainbowpack/errors.hpp"

#include <algorithm>
#include <functional>

namespace rainbowpack::oracles {

namespace {

void check_budget(const Instance& inst, const OracleBudget& budget) {
    if (inst.n() > budget.max_objects)
        throw CapacityError("oracle budget exceeded: " + std::to_string(inst.n()) + " objects");
}

bool fits(const Instance& inst, const RationalVec& load, const RationalVec& item) {
    for (int d = 0; d < inst.dimension; ++d)
        if (load[d] + item[d] > inst.capacity[d]) return false;
    return true;
}

} // namespace

Assignment brute_force_pack(const Instance& inst, const OracleBudget& budget) {
    check_budget(inst, budget);
    const int n = inst.n();
    Assignment best;
    best.placement.assign(n, std::nullopt);
    for (int i = 0; i < n; ++i) {
        if (!vec_le(inst.vectors[i], inst.capacity))
            throw InfeasibleError("object exceeds capacity in every packing");
        best.placement[i] = i + 1;
    }
    best.objective = n;

    std::vector<RationalVec> loads;
    std::vector<std::optional<int>> placement(n);

    std::function<void(int, int)> rec = [&](int item, int used) {
        if (budget.prune && used >= best.objective) return;
        if (item == n) {
            if (used < best.objective) {
                best.placement = placement;
                best.objective = used;
            }
            return;
        }
        int limit = std::min(used + 1, n);
        for (int c = 1; c <= limit; ++c) {
            if (c <= used && !fits(inst, loads[c - 1], inst.vectors[item])) continue;
            bool fresh = c > used;
            if (fresh)
                loads.push_back(inst.vectors[item]);
            else
                loads[c - 1] = vec_add(loads[c - 1], inst.vectors[item]);
            placement[item] = c;
            rec(item + 1, std::max(used, c));
            if (fresh)
                loads.pop_back();
            else
                loads[c - 1] = vec_sub(loads[c - 1], inst.vectors[item]);
        }
    };
    if (n > 0) rec(0, 0);
    if (n == 0) best.objective = 0;
    return best;
}

Assignment brute_force_cover(const Instance& inst, const OracleBudget& budget) {
    check_budget(inst, budget);
    const int n = inst.n();
    Assignment best;
    best.placement.assign(n, std::nullopt);
    best.objective = -1;

    std::vector<RationalVec> loads;
    std::vector<std::optional<int>> placement(n);

    auto covered_count = [&]() {
        long long covered = 0;
        for (const auto& load : loads)
            if (vec_ge(load, inst.capacity)) ++covered;
        return covered;
    };

    std::function<void(int, int)> rec = [&](int item, int used) {
        if (item == n) {
            long long covered = covered_count();
            if (covered > best.objective) {
                best.placement = placement;
                best.objective = covered;
            }
            return;
        }
        if (budget.prune) {
            // Even if every open container ends up covered and the rest of
            // the items each cover a fresh container, can we beat the best?
            long long bound = static_cast<long long>(loads.size()) + (n - item);
            if (bound <= best.objective) return;
        }
        for (int c = 1; c <= std::min(used + 1, n); ++c) {
            bool fresh = c > used;
            if (fresh)
                loads.push_back(inst.vectors[item]);
            else
                loads[c - 1] = vec_add(loads[c - 1], inst.vectors[item]);
            placement[item] = c;
            rec(item + 1, std::max(used, c));
            if (fresh)
                loads.pop_back();
            else
                loads[c - 1] = vec_sub(loads[c - 1], inst.vectors[item]);
        }
    };
    if (n > 0)
        rec(0, 0);
    else
        best.objective = 0;
    if (best.objective < 0) best.objective = 0;
    return best;
}

Assignment brute_force_knapsack(const Instance& inst, const OracleBudget& budget) {
    check_budget(inst, budget);
    if (!inst.profits || !inst.containers)
        throw std::invalid_argument("knapsack oracle requires profits and containers");
    const int n = inst.n();
    const auto& profits = *inst.profits;
    const long long C = *inst.containers;

    Assignment best;
    best.placement.assign(n, std::nullopt);
    best.objective = 0;

    std::vector<long long> suffix_profit(n + 1, 0);
    for (int i = n - 1; i >= 0; --i) suffix_profit[i] = suffix_profit[i + 1] + profits[i];

    std::vector<RationalVec> loads;
    std::vector<std::optional<int>> placement(n);

    std::function<void(int, int, long long)> rec = [&](int item, int used, long long profit) {
        if (budget.prune && profit + suffix_profit[item] <= best.objective) return;
        if (item == n) {
            if (profit > best.objective) {
                best.placement = placement;
                best.objective = profit;
            }
            return;
        }
        int limit = static_cast<int>(std::min<long long>(used + 1, C));
        for (int c = 1; c <= limit; ++c) {
            if (c <= used && !fits(inst, loads[c - 1], inst.vectors[item])) continue;
            if (c > used && !vec_le(inst.vectors[item], inst.capacity)) continue;
            bool fresh = c > used;
            if (fresh)
                loads.push_back(inst.vectors[item]);
            else
                loads[c - 1] = vec_add(loads[c - 1], inst.vectors[item]);
            placement[item] = c;
            rec(item + 1, std::max(used, c), profit + profits[item]);
            if (fresh)
                loads.pop_back();
            else
                loads[c - 1] = vec_sub(loads[c - 1], inst.vectors[item]);
        }
        placement[item] = std::nullopt;
        rec(item + 1, used, profit);
    };
    if (n > 0 && C > 0) rec(0, 0, 0);
    return best;
}

} // namespace rainbowpack::oracles
