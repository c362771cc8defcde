#include "rainbowpack/rational.hpp"

#include "rainbowpack/errors.hpp"

#include <cctype>

namespace rainbowpack {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational::Rational(long long num, long long den) : v_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw ParseError("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw ParseError("empty rational literal");

    mpq_class value;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction literal: " + text);
        mpz_class n(num), d(den);
        if (d == 0) throw ParseError("zero denominator in: " + text);
        value = mpq_class(n, d);
    } else {
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            if (!all_digits(s)) throw ParseError("malformed integer literal: " + text);
            value = mpq_class(mpz_class(s));
        } else {
            std::string ip = s.substr(0, dot);
            std::string fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty()) throw ParseError("malformed decimal literal: " + text);
            if (ip.empty()) ip = "0";
            if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
                throw ParseError("malformed decimal literal: " + text);
            mpz_class scale = 1;
            for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
            mpz_class n = mpz_class(ip) * scale + (fp.empty() ? mpz_class(0) : mpz_class(fp));
            value = mpq_class(n, scale);
        }
    }
    value.canonicalize();
    if (negative) value = -value;
    return Rational(value);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.v_ == 0) throw std::domain_error("division by zero rational");
    return Rational(v_ / o.v_);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long long Rational::ceil_to_int() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw CapacityError("ceiling does not fit a machine word");
    return q.get_si();
}

bool vec_le(const RationalVec& a, const RationalVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool vec_ge(const RationalVec& a, const RationalVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

RationalVec vec_add(const RationalVec& a, const RationalVec& b) {
    RationalVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RationalVec vec_sub(const RationalVec& a, const RationalVec& b) {
    RationalVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RationalVec vec_sub_clamped(const RationalVec& a, const RationalVec& b) {
    RationalVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        r[i] = d.is_negative() ? Rational(0) : d;
    }
    return r;
}

} // namespace rainbowpack
