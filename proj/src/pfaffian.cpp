#include "rainbowpack/pfaffian.hpp"

#include <stdexcept>
#include <utility>

namespace rainbowpack {

using namespace gf;

std::uint64_t pfaffian_destructive(std::vector<std::uint64_t>& a, int n) {
    if (n < 0 || (n & 1)) throw std::invalid_argument("pfaffian needs even order");
    if (n == 0) return 1;

    std::uint64_t result = 1;
    std::vector<std::uint64_t> tau(n), col(n);

    for (int k = 0; k + 1 < n; k += 2) {
        // First nonzero pivot in row k (exact field, no magnitude pivoting).
        int piv = -1;
        for (int i = k + 1; i < n; ++i) {
            if (a[static_cast<std::size_t>(k) * n + i]) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return 0;
        if (piv != k + 1) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k + 1) * n + j],
                          a[static_cast<std::size_t>(piv) * n + j]);
            for (int i = 0; i < n; ++i)
                std::swap(a[static_cast<std::size_t>(i) * n + k + 1],
                          a[static_cast<std::size_t>(i) * n + piv]);
            result = neg(result);
        }

        std::uint64_t pivot = a[static_cast<std::size_t>(k) * n + k + 1];
        result = mul(result, pivot);
        if (k + 2 >= n) break;

        std::uint64_t pivot_inv = inv(pivot);
        for (int i = k + 2; i < n; ++i) {
            tau[i] = mul(a[static_cast<std::size_t>(k) * n + i], pivot_inv);
            col[i] = a[static_cast<std::size_t>(i) * n + k + 1];
        }
        for (int i = k + 2; i < n; ++i) {
            const std::uint64_t ti = tau[i];
            const std::uint64_t ci = col[i];
            std::uint64_t* row = &a[static_cast<std::size_t>(i) * n];
            for (int j = k + 2; j < n; ++j) {
                // A[i][j] += tau_i * A[j][k+1] - tau_j * A[i][k+1]
                std::uint64_t t = mul(ti, col[j]);
                std::uint64_t u = mul(tau[j], ci);
                row[j] = add(row[j], sub(t, u));
            }
        }
    }
    return result;
}

gf::Fp pfaffian(const std::vector<gf::Fp>& a, int n) {
    std::vector<std::uint64_t> raw(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) raw[i] = a[i].v;
    return Fp::from_raw(pfaffian_destructive(raw, n));
}

} // namespace rainbowpack
