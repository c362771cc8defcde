#include "rainbowpack/solver_bp.hpp"

#include "rainbowpack/errors.hpp"
#include "rainbowpack/partitions.hpp"
#include "rainbowpack/smallness.hpp"

#include <algorithm>

namespace rainbowpack::bp {

void ItemPool::insert(const Rational& size, int index) {
    by_size_[size].insert(index);
    ++count_;
}

void ItemPool::erase(const Rational& size, int index) {
    auto it = by_size_.find(size);
    it->second.erase(index);
    if (it->second.empty()) by_size_.erase(it);
    --count_;
}

std::pair<Rational, int> ItemPool::max_item() const {
    auto it = by_size_.rbegin();
    return {it->first, *it->second.begin()};
}

std::pair<Rational, int> ItemPool::min_item() const {
    auto it = by_size_.begin();
    return {it->first, *it->second.begin()};
}

std::optional<std::pair<Rational, int>> ItemPool::largest_fitting(const Rational& cap) const {
    auto it = by_size_.upper_bound(cap);
    if (it == by_size_.begin()) return std::nullopt;
    --it;
    return std::make_pair(it->first, *it->second.begin());
}

std::optional<std::vector<int>> fill_single_large(const std::vector<Rational>& residuals,
                                                  ItemPool& pool) {
    std::vector<int> chosen;
    std::vector<std::pair<Rational, int>> removed;
    for (const auto& residual : residuals) {
        auto item = pool.largest_fitting(residual);
        if (!item) {
            for (const auto& [size, idx] : removed) pool.insert(size, idx);
            return std::nullopt;
        }
        pool.erase(item->first, item->second);
        removed.push_back(*item);
        chosen.push_back(item->second);
    }
    return chosen;
}

namespace {

struct OpenBin {
    Rational residual;
    int container; // 1-based container index
};

struct Search {
    const Instance& inst;
    Rational capacity;
    long long branches = 0;
    std::optional<Assignment> best;
    int best_bins = 0;

    explicit Search(const Instance& i) : inst(i), capacity(i.capacity[0]) {}

    void offer(const std::vector<std::optional<int>>& placement, int bins) {
        ++branches;
        if (!best || bins < best_bins) {
            Assignment asg;
            asg.placement = placement;
            asg.objective = bins;
            best = std::move(asg);
            best_bins = bins;
        }
    }

    void reject() { ++branches; }

    // Places remaining large items. Open bins each still need exactly two
    // large items; everything else goes into fresh bins, largest item
    // paired with the largest fitting partner.
    void place_large(std::vector<OpenBin> open, ItemPool pool,
                     std::vector<std::optional<int>> placement, int bins_used) {
        while (true) {
            if (pool.empty()) {
                if (open.empty())
                    offer(placement, bins_used);
                else
                    reject(); // open bins missed their two large items
                return;
            }
            auto [l_size, l_idx] = pool.max_item();
            bool pair_fits_partial = false;
            std::pair<Rational, int> smallest{Rational(0), -1};
            if (!open.empty() && pool.size() >= 2) {
                smallest = pool.min_item();
                if (smallest.second == l_idx) {
                    // same index can happen only when all sizes are equal;
                    // pick the next index of the same size
                    auto tmp = pool;
                    tmp.erase(l_size, l_idx);
                    smallest = tmp.min_item();
                }
                for (const auto& bin : open) {
                    if (l_size + smallest.first <= bin.residual) {
                        pair_fits_partial = true;
                        break;
                    }
                }
            }

            if (!pair_fits_partial) {
                // The largest item cannot share a partial bin with the
                // smallest one: pair it off into a fresh bin.
                pool.erase(l_size, l_idx);
                std::optional<std::pair<Rational, int>> partner;
                if (!pool.empty()) partner = pool.largest_fitting(capacity - l_size);
                int container = ++bins_used;
                placement[l_idx] = container;
                if (partner) {
                    pool.erase(partner->first, partner->second);
                    placement[partner->second] = container;
                }
                continue;
            }

            // The smallest item belongs to some partial bin: branch over
            // which one, pairing it with the largest item fitting there.
            bool branched = false;
            for (std::size_t b = 0; b < open.size(); ++b) {
                Rational room = open[b].residual - smallest.first;
                if (room.is_negative()) continue;
                auto tmp = pool;
                tmp.erase(smallest.first, smallest.second);
                auto partner = tmp.largest_fitting(room);
                if (!partner) continue;
                tmp.erase(partner->first, partner->second);
                auto next_open = open;
                next_open.erase(next_open.begin() + static_cast<long>(b));
                auto next_placement = placement;
                next_placement[smallest.second] = open[b].container;
                next_placement[partner->second] = open[b].container;
                branched = true;
                place_large(std::move(next_open), std::move(tmp), std::move(next_placement),
                            bins_used);
            }
            if (!branched) reject(); // no partial bin can take the pair
            return;
        }
    }
};

} // namespace

SolveResult solve(const Instance& inst) {
    if (inst.dimension != 1) throw std::invalid_argument("deterministic solver is 1-D only");
    SolveResult result;
    const int n = inst.n();
    if (n == 0) {
        result.assignment.objective = 0;
        return result;
    }
    const Rational capacity = inst.capacity[0];
    for (int i = 0; i < n; ++i)
        if (inst.vectors[i][0] > capacity)
            throw InfeasibleError("item " + std::to_string(i) + " exceeds the bin capacity");

    auto sm = smallness::split_small_large(inst, Mode::pack);
    result.k = sm.k;

    Search search(inst);

    for_each_partition(sm.k, std::max(sm.k, 1), [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<std::vector<int>> groups;
        std::vector<Rational> loads;
        for (const auto& block : blocks) {
            std::vector<int> group;
            Rational load(0);
            for (int pos : block) {
                group.push_back(sm.small[pos]);
                load += inst.vectors[sm.small[pos]][0];
            }
            if (load > capacity) return true; // over-packed partial bin
            groups.push_back(std::move(group));
            loads.push_back(load);
        }
        const int blocks_count = static_cast<int>(groups.size());

        std::vector<std::optional<int>> base_placement(n);
        for (int g = 0; g < blocks_count; ++g)
            for (int item : groups[g]) base_placement[item] = g + 1;

        // Partial bins ordered by descending small load, ties by group index.
        std::vector<int> order(blocks_count);
        for (int g = 0; g < blocks_count; ++g) order[g] = g;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (loads[a] != loads[b]) return loads[b] < loads[a];
            return a < b;
        });

        // Guess the all-small prefix: those bins receive no large item.
        for (int prefix = 0; prefix <= blocks_count; ++prefix) {
            std::vector<int> receiving(order.begin() + prefix, order.end());
            const int r = static_cast<int>(receiving.size());
            // Guess which receiving bins take exactly one large item.
            for (std::uint32_t s1_mask = 0; s1_mask < (1u << r); ++s1_mask) {
                ItemPool pool;
                for (int idx : sm.large) pool.insert(inst.vectors[idx][0], idx);
                auto placement = base_placement;

                std::vector<Rational> single_residuals;
                std::vector<int> single_bins;
                std::vector<OpenBin> open;
                for (int pos = 0; pos < r; ++pos) {
                    int g = receiving[pos];
                    if ((s1_mask >> pos) & 1) {
                        single_residuals.push_back(capacity - loads[g]);
                        single_bins.push_back(g);
                    } else {
                        open.push_back({capacity - loads[g], g + 1});
                    }
                }
                auto singles = fill_single_large(single_residuals, pool);
                if (!singles) {
                    search.reject();
                    continue;
                }
                for (std::size_t s = 0; s < singles->size(); ++s)
                    placement[(*singles)[s]] = single_bins[s] + 1;

                search.place_large(open, std::move(pool), std::move(placement), blocks_count);
            }
        }
        return true;
    });

    if (!search.best) throw std::logic_error("no packing branch completed");
    result.assignment = std::move(*search.best);
    result.bins = static_cast<int>(result.assignment.objective);
    result.explored_branches = search.branches;
    return result;
}

} // namespace rainbowpack::bp
