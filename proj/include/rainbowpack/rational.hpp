#ifndef RAINBOWPACK_RATIONAL_HPP
#define RAINBOWPACK_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace rainbowpack {

// Exact rational number. Always canonical: lowest terms, positive
// denominator. All feasibility logic in this project compares through this
// type; there is no floating-point path.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(long long num, long long den);

    // Accepts "p/q", integer, and decimal literals ("0.15" becomes 3/20
    // exactly). Throws ParseError on anything else.
    static Rational parse(const std::string& text);

    // Canonical form: "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const; // throws on zero divisor
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    bool is_negative() const { return v_ < 0; }
    bool is_zero() const { return v_ == 0; }

    // Smallest integer >= this value. Used for volume lower bounds; the
    // result must fit in long long.
    long long ceil_to_int() const;

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    mpq_class v_;
};

using RationalVec = std::vector<Rational>;

// Componentwise helpers for d-dimensional quantities.
bool vec_le(const RationalVec& a, const RationalVec& b);   // a <= b in every dim
bool vec_ge(const RationalVec& a, const RationalVec& b);   // a >= b in every dim
RationalVec vec_add(const RationalVec& a, const RationalVec& b);
RationalVec vec_sub(const RationalVec& a, const RationalVec& b);
// max(a - b, 0) per dimension; the residual demand of a partially covered
// container.
RationalVec vec_sub_clamped(const RationalVec& a, const RationalVec& b);

} // namespace rainbowpack

#endif
