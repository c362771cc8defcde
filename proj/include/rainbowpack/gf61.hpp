#ifndef RAINBOWPACK_GF61_HPP
#define RAINBOWPACK_GF61_HPP

#include <cstdint>

namespace rainbowpack::gf {

// Arithmetic in GF(P) for the Mersenne prime P = 2^61 - 1. Large enough
// that a single Schwartz-Zippel trial already beats the configured
// false-negative targets for any instance this project can hold.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(std::uint64_t x) {
    x = (x & kPrime) + (x >> 61);
    return x >= kPrime ? x - kPrime : x;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kPrime - b;
}

inline std::uint64_t neg(std::uint64_t a) { return a == 0 ? 0 : kPrime - a; }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p) & kPrime;
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a) { return pow(a, kPrime - 2); }

// Residue wrapper used by the public algebraic interfaces; the hot loops
// work on raw uint64_t residues directly.
struct Fp {
    std::uint64_t v = 0;
    Fp() = default;
    explicit Fp(std::uint64_t value) : v(reduce(value)) {}
    Fp operator+(Fp o) const { return from_raw(add(v, o.v)); }
    Fp operator-(Fp o) const { return from_raw(sub(v, o.v)); }
    Fp operator*(Fp o) const { return from_raw(mul(v, o.v)); }
    Fp operator-() const { return from_raw(neg(v)); }
    bool operator==(Fp o) const { return v == o.v; }
    bool operator!=(Fp o) const { return v != o.v; }
    static Fp from_raw(std::uint64_t raw) {
        Fp x;
        x.v = raw;
        return x;
    }
};

} // namespace rainbowpack::gf

#endif
