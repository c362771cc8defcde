#ifndef RAINBOWPACK_PARTITIONS_HPP
#define RAINBOWPACK_PARTITIONS_HPP

#include <functional>
#include <vector>

namespace rainbowpack {

// Enumerates every set partition of {0..n-1} into at most max_blocks
// non-empty blocks, in restricted-growth-string order. The callback sees
// the blocks grouped by index; returning false stops the enumeration.
inline void for_each_partition(int n, int max_blocks,
                               const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
    if (n == 0) {
        visit({});
        return;
    }
    if (max_blocks < 1) return;

    std::vector<int> rgs(n, 0);
    std::vector<std::vector<int>> blocks;
    bool stopped = false;

    std::function<void(int, int)> rec = [&](int i, int used) {
        if (stopped) return;
        if (i == n) {
            blocks.assign(used, {});
            for (int j = 0; j < n; ++j) blocks[rgs[j]].push_back(j);
            if (!visit(blocks)) stopped = true;
            return;
        }
        int limit = std::min(used, max_blocks - 1);
        for (int b = 0; b <= limit && !stopped; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
}

inline long long count_partitions(int n, int max_blocks) {
    long long count = 0;
    for_each_partition(n, max_blocks, [&](const std::vector<std::vector<int>>&) {
        ++count;
        return true;
    });
    return count;
}

} // namespace rainbowpack

#endif
