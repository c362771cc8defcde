#include "rainbowpack/engine.hpp"

#include "rainbowpack/errors.hpp"
#include "rainbowpack/gf61.hpp"
#include "rainbowpack/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <set>

namespace rainbowpack::alg {

using namespace gf;

namespace {

std::uint64_t random_unit(std::mt19937_64& rng) {
    return rng() % (kPrime - 1) + 1;
}

} // namespace

MatchingTable::MatchingTable(int num_nodes, const std::vector<Term>& terms, int num_axes,
                             std::uint64_t seed, std::optional<long long> max_weight_hint,
                             const SolveOptions& opts) {
    n_ = num_nodes;
    num_axes_ = num_axes;
    odd_ = (num_nodes & 1) != 0;
    if (odd_) return;
    if (num_axes > 20) throw CapacityError("too many inclusion-exclusion axes");

    // Every perfect matching has exactly n/2 edges, so shifting all term
    // weights by the global minimum and dividing by the gcd of the offsets
    // rescales matching weights affinely. Interpolation then only needs the
    // reduced degree.
    long long pairs = n_ / 2;
    shift_ = 0;
    gcd_ = 1;
    std::vector<long long> expo(terms.size(), 0);
    long long max_e = 0;
    if (!terms.empty()) {
        shift_ = terms[0].weight;
        for (const auto& t : terms) shift_ = std::min(shift_, t.weight);
        long long g = 0;
        for (const auto& t : terms) g = std::gcd(g, t.weight - shift_);
        gcd_ = g == 0 ? 1 : g;
        for (std::size_t i = 0; i < terms.size(); ++i) expo[i] = (terms[i].weight - shift_) / gcd_;
        max_e = *std::max_element(expo.begin(), expo.end());
    }

    long long degree = pairs * max_e;
    if (max_e > 0) {
        std::set<int> weighted_nodes;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (expo[i] > 0) {
                weighted_nodes.insert(terms[i].u);
                weighted_nodes.insert(terms[i].v);
            }
        }
        degree = std::min(degree, static_cast<long long>(weighted_nodes.size() / 2) * max_e);
    }
    if (max_weight_hint) {
        long long hint_degree = (*max_weight_hint - shift_ * pairs) / gcd_;
        degree = std::min(degree, std::max(hint_degree, 0ll));
    }
    if (degree < 0 || degree + 1 > static_cast<long long>(opts.degree_cap))
        throw CapacityError("interpolation degree " + std::to_string(degree) +
                            " exceeds configured cap");
    degree_ = static_cast<int>(degree);

    std::size_t points = static_cast<std::size_t>(degree_) + 1;
    std::size_t subsets = std::size_t{1} << num_axes;
    if (points * subsets > opts.table_cap)
        throw CapacityError("decision table too large");

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> coeff(terms.size());
    for (auto& c : coeff) c = random_unit(rng);

    // r_t * y_j^{e_t}, precomputed per point.
    std::vector<std::vector<std::uint64_t>> term_values(points,
                                                        std::vector<std::uint64_t>(terms.size()));
    for (std::size_t j = 0; j < points; ++j) {
        std::vector<std::uint64_t> pows(static_cast<std::size_t>(max_e) + 1);
        pows[0] = 1;
        for (std::size_t e = 1; e < pows.size(); ++e) pows[e] = mul(pows[e - 1], reduce(j));
        for (std::size_t t = 0; t < terms.size(); ++t)
            term_values[j][t] = mul(coeff[t], pows[static_cast<std::size_t>(expo[t])]);
    }

    table_.assign(subsets, std::vector<std::uint64_t>(points, 0));
    const std::size_t cells = static_cast<std::size_t>(n_) * n_;

    auto compute_range = [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> matrix(cells);
        for (std::size_t flat = begin; flat < end; ++flat) {
            std::size_t s = flat / points;
            std::size_t j = flat % points;
            std::fill(matrix.begin(), matrix.end(), 0);
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const Term& term = terms[t];
                if (term.axis >= 0 && (s >> term.axis) & 1) continue;
                std::uint64_t val = term_values[j][t];
                std::size_t uv = static_cast<std::size_t>(term.u) * n_ + term.v;
                std::size_t vu = static_cast<std::size_t>(term.v) * n_ + term.u;
                matrix[uv] = add(matrix[uv], val);
                matrix[vu] = sub(matrix[vu], val);
            }
            table_[s][j] = pfaffian_destructive(matrix, n_);
        }
    };

    std::size_t total = subsets * points;
    int threads = std::max(1, opts.threads);
    if (threads == 1 || total < 4) {
        compute_range(0, total);
    } else {
        std::size_t chunk = (total + threads - 1) / threads;
        std::vector<std::future<void>> work;
        for (std::size_t begin = 0; begin < total; begin += chunk)
            work.push_back(std::async(std::launch::async, compute_range, begin,
                                      std::min(begin + chunk, total)));
        for (auto& w : work) w.get();
    }

    // Lagrange scaffolding at the points 0..degree, reused by every query.
    master_poly_.assign(points + 1, 0);
    master_poly_[0] = 1;
    for (std::size_t j = 0; j < points; ++j) {
        // multiply by (x - j)
        std::uint64_t root = reduce(j);
        for (std::size_t i = points; i > 0; --i)
            master_poly_[i] = sub(master_poly_[i - 1], mul(master_poly_[i], root));
        master_poly_[0] = mul(master_poly_[0], neg(root));
    }
    denom_inv_.assign(points, 1);
    for (std::size_t j = 0; j < points; ++j) {
        std::uint64_t d = 1;
        for (std::size_t m = 0; m < points; ++m) {
            if (m == j) continue;
            d = mul(d, sub(reduce(j), reduce(m)));
        }
        denom_inv_[j] = inv(d);
    }
}

std::optional<long long> MatchingTable::query(std::uint32_t deleted_mask,
                                              std::uint32_t required_mask,
                                              long long budget) const {
    if (odd_) return std::nullopt;
    const std::size_t points = static_cast<std::size_t>(degree_) + 1;

    // Alternating sum over subsets of the required axes on top of the
    // permanently deleted ones.
    std::vector<std::uint64_t> vals(points, 0);
    std::uint32_t sub_mask = required_mask;
    while (true) {
        bool negate = (__builtin_popcount(sub_mask) & 1) != 0;
        const auto& row = table_[deleted_mask | sub_mask];
        for (std::size_t j = 0; j < points; ++j)
            vals[j] = negate ? sub(vals[j], row[j]) : add(vals[j], row[j]);
        if (sub_mask == 0) break;
        sub_mask = (sub_mask - 1) & required_mask;
    }

    std::vector<std::uint64_t> coeffs(points, 0);
    if (points == 1) {
        coeffs[0] = vals[0];
    } else {
        std::vector<std::uint64_t> quotient(points);
        for (std::size_t j = 0; j < points; ++j) {
            if (vals[j] == 0) continue;
            // master / (x - j) by synthetic division
            std::uint64_t root = reduce(j);
            quotient[points - 1] = master_poly_[points];
            for (std::size_t i = points - 1; i > 0; --i)
                quotient[i - 1] = add(master_poly_[i], mul(root, quotient[i]));
            std::uint64_t scale = mul(vals[j], denom_inv_[j]);
            for (std::size_t i = 0; i < points; ++i)
                coeffs[i] = add(coeffs[i], mul(scale, quotient[i]));
        }
    }

    const long long pairs = n_ / 2;
    for (int t = 0; t <= degree_; ++t) {
        if (coeffs[static_cast<std::size_t>(t)] == 0) continue;
        long long weight = shift_ * pairs + gcd_ * t;
        if (weight > budget) return std::nullopt;
        return weight;
    }
    return std::nullopt;
}

int trials_needed(int num_nodes, long long budget, int error_exponent) {
    double single = std::log(num_nodes / 2.0 + 1.0) - 61.0 * std::log(2.0);
    double target = -static_cast<double>(error_exponent) *
                    std::log(static_cast<double>(num_nodes) + static_cast<double>(budget) + 2.0);
    if (single >= 0) return 8;
    int trials = static_cast<int>(std::ceil(target / single));
    return std::clamp(trials, 1, 8);
}

} // namespace rainbowpack::alg
