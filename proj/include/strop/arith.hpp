#pragma once

// Exact scalar types.  Integer and Rational are GMP-backed; Checked64 is a
// machine-word integer that throws on overflow and is used as the fast path
// of the integer normal forms.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "strop/errors.hpp"

namespace strop {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

struct ArithmeticOverflow : std::overflow_error {
    ArithmeticOverflow() : std::overflow_error("64-bit integer overflow") {}
};

class Checked64 {
public:
    constexpr Checked64() = default;
    constexpr Checked64(std::int64_t v) : v_(v) {}  // NOLINT(implicit)

    constexpr std::int64_t value() const { return v_; }

    friend Checked64 operator+(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
        return r;
    }
    friend Checked64 operator/(Checked64 a, Checked64 b) {
        if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) throw ArithmeticOverflow{};
        return a.v_ / b.v_;
    }
    friend Checked64 operator%(Checked64 a, Checked64 b) {
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    Checked64 operator-() const {
        if (v_ == std::numeric_limits<std::int64_t>::min()) throw ArithmeticOverflow{};
        return -v_;
    }
    Checked64& operator+=(Checked64 o) { return *this = *this + o; }
    Checked64& operator-=(Checked64 o) { return *this = *this - o; }
    Checked64& operator*=(Checked64 o) { return *this = *this * o; }

    friend constexpr bool operator==(Checked64 a, Checked64 b) { return a.v_ == b.v_; }
    friend constexpr auto operator<=>(Checked64 a, Checked64 b) { return a.v_ <=> b.v_; }

private:
    std::int64_t v_ = 0;
};

inline Checked64 abs(Checked64 a) { return a < Checked64(0) ? -a : a; }

inline bool is_zero(const Integer& a) { return a.is_zero(); }
inline bool is_zero(Checked64 a) { return a.value() == 0; }
inline bool is_zero(const Rational& a) { return a.is_zero(); }

inline int sign_of(const Integer& a) { return a.sign(); }
inline int sign_of(const Rational& a) { return a.sign(); }
inline int sign_of(Checked64 a) { return a.value() > 0 ? 1 : (a.value() < 0 ? -1 : 0); }

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline bool fits_int64(const Integer& a) {
    return a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max();
}

inline Integer floor_of(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    Integer q = num / den;
    if (num % den != 0 && num < 0) q -= 1;
    return q;
}

inline Integer ceil_of(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    Integer q = num / den;
    if (num % den != 0 && num > 0) q += 1;
    return q;
}

inline bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// Parses "p", "-p" or "p/q".  Throws InputFormatError on anything else.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw InputFormatError("empty rational component in '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw InputFormatError("bad rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw InputFormatError("bad rational '" + std::string(text) + "'");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputFormatError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& r) {
    if (is_integral(r)) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

} // namespace strop
