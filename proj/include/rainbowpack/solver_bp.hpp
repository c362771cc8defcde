#ifndef RAINBOWPACK_SOLVER_BP_HPP
#define RAINBOWPACK_SOLVER_BP_HPP

#include "rainbowpack/instance.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace rainbowpack::bp {

// Multiset of remaining large item sizes with order statistics: maximum,
// minimum, and "largest item <= x" in O(log n); ties resolve to the lowest
// original index.
class ItemPool {
public:
    void insert(const Rational& size, int index);
    void erase(const Rational& size, int index);
    bool empty() const { return count_ == 0; }
    std::size_t size() const { return count_; }
    std::pair<Rational, int> max_item() const;
    std::pair<Rational, int> min_item() const;
    // Largest item with size <= cap, or nullopt.
    std::optional<std::pair<Rational, int>> largest_fitting(const Rational& cap) const;

private:
    std::map<Rational, std::set<int>> by_size_;
    std::size_t count_ = 0;
};

// Greedy single-large placement: bins in the given order each take the
// largest pool item fitting their residual. nullopt when some bin has no
// fitting item; on success returns one item index per bin and removes them
// from the pool.
std::optional<std::vector<int>> fill_single_large(const std::vector<Rational>& residuals,
                                                  ItemPool& pool);

struct SolveResult {
    Assignment assignment;
    int bins = 0;
    int k = 0;
    long long explored_branches = 0; // terminal events over all guesses
};

// Deterministic 1-D bin packing, exponential only in the number of small
// items: partition the small items, guess the all-small prefix and the
// single-large subset, then place large items largest-first with
// backtracking only over which partial bin hosts the smallest item.
SolveResult solve(const Instance& inst);

} // namespace rainbowpack::bp

#endif
