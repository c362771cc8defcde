#ifndef RAINBOWPACK_PFAFFIAN_HPP
#define RAINBOWPACK_PFAFFIAN_HPP

#include "rainbowpack/gf61.hpp"

#include <cstdint>
#include <vector>

namespace rainbowpack {

// Pfaffian of an even-order skew-symmetric matrix over GF(P), by
// skew-symmetric (Parlett-Reid) elimination in O(n^3) field operations.
// The matrix is row-major and destroyed. Odd order throws
// std::invalid_argument; the 0x0 Pfaffian is 1.
std::uint64_t pfaffian_destructive(std::vector<std::uint64_t>& a, int n);

// Non-destructive typed convenience wrapper.
gf::Fp pfaffian(const std::vector<gf::Fp>& a, int n);

} // namespace rainbowpack

#endif
