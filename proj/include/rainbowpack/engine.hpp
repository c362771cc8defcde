#ifndef RAINBOWPACK_ENGINE_HPP
#define RAINBOWPACK_ENGINE_HPP

#include "rainbowpack/config.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rainbowpack::alg {

// One summand of a Tutte-matrix entry: a potential matching edge {u, v}
// carrying an integer weight. `axis` ties the term to one inclusion-
// exclusion axis (a pattern edge or a color); -1 means the term survives
// every deletion.
struct Term {
    int u = 0;
    int v = 0;
    long long weight = 0;
    int axis = -1;
};

// Randomized weighted-matching table. For every subset S of axes and every
// interpolation point y_j it stores the Pfaffian of the Tutte-skew matrix
// with entries sum of r_t * y_j^{e_t} over surviving terms. Alternating
// subset sums then decide, for any (deleted, required) axis pair, whether a
// perfect matching using at least one term of every required axis and no
// term of a deleted axis exists at each weight, with one-sided error: a
// reported weight always exists, a feasible weight is missed with
// probability at most (n/2)/(P-1) per trial.
class MatchingTable {
public:
    // `max_weight_hint`, when given, must upper-bound the weight of every
    // perfect matching of the full term set; it tightens the interpolation
    // degree and is the caller's responsibility.
    MatchingTable(int num_nodes, const std::vector<Term>& terms, int num_axes,
                  std::uint64_t seed, std::optional<long long> max_weight_hint,
                  const SolveOptions& opts);

    // Minimum weight w <= budget of a perfect matching avoiding all terms
    // with axis in `deleted_mask` and containing a term of every axis in
    // `required_mask`; nullopt if none is detected.
    std::optional<long long> query(std::uint32_t deleted_mask, std::uint32_t required_mask,
                                   long long budget) const;

    int degree() const { return degree_; }
    long long weight_shift() const { return shift_; }
    long long weight_gcd() const { return gcd_; }

private:
    int n_ = 0;
    int num_axes_ = 0;
    bool odd_ = false;
    long long shift_ = 0;
    long long gcd_ = 1;
    int degree_ = 0;
    std::vector<std::vector<std::uint64_t>> table_;   // [subset][point]
    std::vector<std::uint64_t> master_poly_;          // prod (x - j), degree_+1 coeffs
    std::vector<std::uint64_t> denom_inv_;            // 1 / prod_{m != j} (j - m)
};

// Number of independent trials needed to push the per-decision false
// negative rate below (n + budget)^-error_exponent. One trial suffices for
// every realistic size with a 61-bit field; the formula keeps the contract
// honest for extreme parameters.
int trials_needed(int num_nodes, long long budget, int error_exponent);

} // namespace rainbowpack::alg

#endif
