#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gvseq/errors.hpp"

namespace gvseq {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational numbers. cpp_rational keeps every value canonical:
// gcd(|numerator|, denominator) = 1, denominator > 0, zero is 0/1.
// Equality is therefore structural.
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const BigRat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const BigRat& q) { return rat_den(q) == 1; }

// Requires is_integer(q).
inline BigInt to_integer(const BigRat& q) {
    if (!is_integer(q)) raise(Errc::NonIntegralSequence, "value is not an integer: " + q.str());
    return rat_num(q);
}

inline int sign_of(const BigRat& q) { return q.sign(); }

inline BigRat rat_abs(const BigRat& q) { return q < 0 ? BigRat(-q) : q; }
inline BigInt int_abs(const BigInt& n) { return n < 0 ? BigInt(-n) : n; }

inline BigInt int_pow(BigInt base, unsigned long e) {
    BigInt out(1);
    while (e != 0) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e != 0) base *= base;
    }
    return out;
}

// base^e with negative exponents allowed (base must be nonzero then).
inline BigRat rat_pow(const BigRat& base, long e) {
    if (e < 0 && base == 0) raise(Errc::DivideByZero, "0 raised to a negative power");
    const unsigned long mag = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    BigInt n = int_pow(rat_num(base), mag);
    BigInt d = int_pow(rat_den(base), mag);
    return e < 0 ? BigRat(d, n) : BigRat(n, d);
}

inline BigInt factorial(unsigned n) {
    BigInt out(1);
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

// binomial(m, 2)
inline unsigned long binom2(unsigned long m) { return m < 2 ? 0ul : m * (m - 1) / 2; }

// Ring divisibility over Z with the convention 0 | x iff x = 0.
inline bool divides_int(const BigInt& d, const BigInt& x) {
    if (d == 0) return x == 0;
    return x % d == 0;
}

// floor(a / b) for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && a.sign() < 0) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && a.sign() > 0) ++q;
    return q;
}

inline BigInt isqrt_floor(const BigInt& n) { return boost::multiprecision::sqrt(n); }

inline BigInt isqrt_ceil(const BigInt& n) {
    BigInt s = isqrt_floor(n);
    return s * s == n ? s : BigInt(s + 1);
}

// Rational upper bound on sqrt(q) for q >= 0: sqrt(p/d) <= ceil(sqrt(p*d))/d.
inline BigRat rat_sqrt_upper(const BigRat& q) {
    if (q < 0) raise(Errc::InvalidArgument, "sqrt of negative rational");
    if (q == 0) return BigRat(0);
    return BigRat(isqrt_ceil(rat_num(q) * rat_den(q)), rat_den(q));
}

// Approximate position of the leading bit of |q|; exact up to +-1.
// Only meaningful for q != 0.
inline long mag_bits(const BigRat& q) {
    const BigInt n = int_abs(rat_num(q));
    const BigInt d = rat_den(q);
    const long nb = n == 0 ? 0 : static_cast<long>(boost::multiprecision::msb(n));
    const long db = static_cast<long>(boost::multiprecision::msb(d));
    return nb - db;
}

// floor(q * 2^s) / 2^s, for any integer s.
inline BigRat dyadic_floor(const BigRat& q, long s) {
    BigInt n = rat_num(q), d = rat_den(q);
    if (s >= 0) {
        BigInt scaled = floor_div(n << static_cast<unsigned>(s), d);
        return BigRat(scaled, BigInt(1) << static_cast<unsigned>(s));
    }
    BigInt scaled = floor_div(n, d << static_cast<unsigned>(-s));
    return BigRat(scaled << static_cast<unsigned>(-s), 1);
}

inline BigRat dyadic_ceil(const BigRat& q, long s) { return -dyadic_floor(-q, s); }

// Nearest dyadic with granularity 2^-s (ties toward +inf); used by the
// software floating point inside the root finder.
inline BigRat dyadic_round(const BigRat& q, long s) {
    BigRat half(1, 2);
    return dyadic_floor(q + (s >= 0 ? BigRat(BigInt(1), BigInt(1) << static_cast<unsigned>(s + 1))
                                    : BigRat(BigInt(1) << static_cast<unsigned>(-s - 1), 1)),
                        s);
}

inline BigRat pow10_inv(unsigned k) { return BigRat(1, int_pow(BigInt(10), k)); }

inline BigRat rat_pow2(long k) {
    return k >= 0 ? BigRat(BigInt(1) << static_cast<unsigned>(k), 1)
                  : BigRat(1, BigInt(1) << static_cast<unsigned>(-k));
}

// Quotients a / b rounded to granularity 2^-s with integer arithmetic only.
// These avoid materializing the exact quotient, whose canonicalization would
// gcd-normalize huge coprime numerator/denominator pairs.
namespace detail {

inline std::pair<BigInt, BigInt> div_operands(const BigRat& a, const BigRat& b) {
    if (b == 0) raise(Errc::DivideByZero, "rational division by zero");
    BigInt n = rat_num(a) * rat_den(b);
    BigInt d = rat_den(a) * rat_num(b);
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return {std::move(n), std::move(d)};
}

}  // namespace detail

inline BigRat rat_div_round(const BigRat& a, const BigRat& b, long s) {
    auto [n, d] = detail::div_operands(a, b);
    if (s >= 0) {
        BigInt q = floor_div((n << static_cast<unsigned>(s + 1)) + d, d << 1);
        return BigRat(q, BigInt(1) << static_cast<unsigned>(s));
    }
    BigInt dd = d << static_cast<unsigned>(-s);
    BigInt q = floor_div((n << 1) + dd, dd << 1);
    return BigRat(q << static_cast<unsigned>(-s), 1);
}

inline BigRat rat_div_floor(const BigRat& a, const BigRat& b, long s) {
    auto [n, d] = detail::div_operands(a, b);
    if (s >= 0) return BigRat(floor_div(n << static_cast<unsigned>(s), d), BigInt(1) << static_cast<unsigned>(s));
    BigInt q = floor_div(n, d << static_cast<unsigned>(-s));
    return BigRat(q << static_cast<unsigned>(-s), 1);
}

inline BigRat rat_div_ceil(const BigRat& a, const BigRat& b, long s) {
    auto [n, d] = detail::div_operands(a, b);
    if (s >= 0) return BigRat(ceil_div(n << static_cast<unsigned>(s), d), BigInt(1) << static_cast<unsigned>(s));
    BigInt q = ceil_div(n, d << static_cast<unsigned>(-s));
    return BigRat(q << static_cast<unsigned>(-s), 1);
}

// Canonical text form: "p" when integral, "p/q" otherwise.
inline std::string rat_to_string(const BigRat& q) {
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::optional<BigInt> parse_int(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return std::nullopt;
    BigInt v{std::string(s)};
    return neg ? BigInt(-v) : v;
}

}  // namespace detail

// Accepts "p", "p/q", and the shorthand "Me-K" for M * 10^-K (exact).
// Decimal points are rejected: inputs stay float-free.
inline std::optional<BigRat> parse_rational(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = detail::parse_int(s.substr(0, slash));
        auto d = detail::parse_int(s.substr(slash + 1));
        if (!n || !d || *d == 0) return std::nullopt;
        return BigRat(*n, *d);
    }
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto m = detail::parse_int(s.substr(0, e));
        auto rest = s.substr(e + 1);
        if (!m || rest.empty()) return std::nullopt;
        bool neg = rest.front() == '-';
        if (rest.front() == '-' || rest.front() == '+') rest.remove_prefix(1);
        if (!detail::all_digits(rest) || rest.size() > 6) return std::nullopt;
        unsigned long k = std::stoul(std::string(rest));
        BigInt p10 = int_pow(BigInt(10), k);
        return neg ? BigRat(*m, p10) : BigRat(*m * p10, 1);
    }
    auto n = detail::parse_int(s);
    if (!n) return std::nullopt;
    return BigRat(*n, 1);
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Working-precision ceiling for the certified numeric paths. The hard cap
// corresponds to ten doublings past 2^-1024; GVSEQ_MAX_BITS may lower it.
inline long precision_bit_cap() {
    constexpr long hard_cap = 1024L << 10;
    if (const char* env = std::getenv("GVSEQ_MAX_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 64 && v < hard_cap) return v;
    }
    return hard_cap;
}

}  // namespace gvseq
