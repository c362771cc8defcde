#include "rainbowpack/smallness.hpp"

#include <algorithm>

namespace rainbowpack::smallness {

namespace {

bool triple_matches(const Instance& inst, Mode mode, int a, int b, int c) {
    const int d = inst.dimension;
    if (mode == Mode::pack) {
        // Fits: sum <= T in every dimension.
        for (int dim = 0; dim < d; ++dim) {
            Rational sum = inst.vectors[a][dim] + inst.vectors[b][dim] + inst.vectors[c][dim];
            if (sum > inst.capacity[dim]) return false;
        }
        return true;
    }
    // Cover mode: the triple fails to cover, i.e. some dimension stays short.
    for (int dim = 0; dim < d; ++dim) {
        Rational sum = inst.vectors[a][dim] + inst.vectors[b][dim] + inst.vectors[c][dim];
        if (sum < inst.capacity[dim]) return true;
    }
    return false;
}

struct Searcher {
    const std::vector<FitTriple>& triples;
    std::vector<char> chosen;
    std::vector<int> stack;
    long long leaves = 0;

    explicit Searcher(const std::vector<FitTriple>& t, int n) : triples(t), chosen(n, 0) {}

    int first_unhit() const {
        for (std::size_t i = 0; i < triples.size(); ++i) {
            const auto& t = triples[i];
            if (!chosen[t.idx[0]] && !chosen[t.idx[1]] && !chosen[t.idx[2]])
                return static_cast<int>(i);
        }
        return -1;
    }

    bool dfs(int budget) {
        int t = first_unhit();
        if (t < 0) {
            ++leaves;
            return true;
        }
        if (budget == 0) {
            ++leaves;
            return false;
        }
        for (int e : triples[t].idx) {
            chosen[e] = 1;
            stack.push_back(e);
            if (dfs(budget - 1)) return true;
            stack.pop_back();
            chosen[e] = 0;
        }
        return false;
    }
};

// Disjoint triples give a lower bound on the hitting set size, which lets
// iterative deepening skip hopeless depths.
int disjoint_packing_bound(const std::vector<FitTriple>& triples, int n) {
    std::vector<char> used(n, 0);
    int count = 0;
    for (const auto& t : triples) {
        if (used[t.idx[0]] || used[t.idx[1]] || used[t.idx[2]]) continue;
        used[t.idx[0]] = used[t.idx[1]] = used[t.idx[2]] = 1;
        ++count;
    }
    return count;
}

} // namespace

std::vector<FitTriple> enumerate_fit_triples(const Instance& inst, Mode mode) {
    std::vector<FitTriple> out;
    const int n = inst.n();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (triple_matches(inst, mode, a, b, c)) out.push_back({{a, b, c}});
    return out;
}

HittingSetResult min_hitting_set_3(const std::vector<FitTriple>& triples, int k_max) {
    HittingSetResult result;
    int n = 0;
    for (const auto& t : triples) n = std::max(n, t.idx[2] + 1);

    int lb = std::min(disjoint_packing_bound(triples, n), k_max + 1);
    for (int depth = lb; depth <= k_max; ++depth) {
        Searcher s(triples, n);
        if (s.dfs(depth)) {
            std::vector<int> hs = s.stack;
            std::sort(hs.begin(), hs.end());
            result.set = std::move(hs);
            result.leaves_final = s.leaves;
            result.leaves_total += s.leaves;
            return result;
        }
        result.leaves_total += s.leaves;
        result.leaves_final = s.leaves;
    }
    return result;
}

SmallnessResult split_small_large(const Instance& inst, Mode mode) {
    SmallnessResult out;
    auto triples = enumerate_fit_triples(inst, mode);
    out.stats = min_hitting_set_3(triples, inst.n());
    // k_max = n always admits a hitting set (pick every element).
    out.small = *out.stats.set;
    out.k = static_cast<int>(out.small.size());
    std::vector<char> is_small(inst.n(), 0);
    for (int i : out.small) is_small[i] = 1;
    for (int i = 0; i < inst.n(); ++i)
        if (!is_small[i]) out.large.push_back(i);
    return out;
}

} // namespace rainbowpack::smallness
