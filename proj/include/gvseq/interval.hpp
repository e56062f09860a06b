#pragma once

#include <algorithm>
#include <string>

#include "gvseq/rational.hpp"

namespace gvseq {

// Control-flow signal raised when an enclosure is too wide to continue
// (for example a divisor interval straddling zero). Precision-doubling
// drivers catch it; if the working-precision cap is reached they convert
// it into Error(PrecisionExhausted).
struct RefineNeeded {
    const char* where = "";
};

// Closed interval with exact rational endpoints. Because the endpoint
// arithmetic itself is exact, every operation below returns a rigorous
// enclosure with no rounding-error analysis required; outward rounding is
// applied only to compress endpoint representations.
struct Interval {
    BigRat lo{0};
    BigRat hi{0};

    static Interval point(const BigRat& v) { return {v, v}; }
    static Interval of(const BigRat& a, const BigRat& b) { return a <= b ? Interval{a, b} : Interval{b, a}; }

    bool is_point() const { return lo == hi; }
    bool contains(const BigRat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    BigRat width() const { return hi - lo; }
    BigRat mid() const { return (lo + hi) / 2; }
    BigRat mag_upper() const { return std::max(rat_abs(lo), rat_abs(hi)); }

    std::string to_string() const { return "[" + rat_to_string(lo) + ", " + rat_to_string(hi) + "]"; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    BigRat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval scale(const Interval& a, const BigRat& c) {
    return c >= 0 ? Interval{a.lo * c, a.hi * c} : Interval{a.hi * c, a.lo * c};
}

inline Interval square(const Interval& a) {
    BigRat s1 = a.lo * a.lo, s2 = a.hi * a.hi;
    if (a.contains_zero()) return {BigRat(0), std::max(s1, s2)};
    return {std::min(s1, s2), std::max(s1, s2)};
}

inline Interval recip(const Interval& a) {
    if (a.contains_zero()) throw RefineNeeded{"interval reciprocal across zero"};
    return {BigRat(1) / a.hi, BigRat(1) / a.lo};
}

inline Interval operator/(const Interval& a, const Interval& b) { return a * recip(b); }

inline bool overlaps(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

// Outward rounding to dyadic endpoints with roughly `bits` significant bits.
// Point intervals pass through unchanged so exact rational values stay exact.
inline Interval round_out(const Interval& a, long bits) {
    if (a.is_point()) return a;
    const BigRat m = a.mag_upper();
    if (m == 0) return a;
    const long s = bits - mag_bits(m);
    return {dyadic_floor(a.lo, s), dyadic_ceil(a.hi, s)};
}

// Rectangular complex interval.
struct Box {
    Interval re;
    Interval im;

    static Box point(const BigRat& r, const BigRat& i = BigRat(0)) {
        return {Interval::point(r), Interval::point(i)};
    }

    bool contains(const BigRat& r, const BigRat& i) const { return re.contains(r) && im.contains(i); }
    bool is_point() const { return re.is_point() && im.is_point(); }
    BigRat width() const { return re.width() + im.width(); }

    std::string to_string() const { return re.to_string() + " + " + im.to_string() + "*i"; }
};

inline Box operator+(const Box& a, const Box& b) { return {a.re + b.re, a.im + b.im}; }
inline Box operator-(const Box& a, const Box& b) { return {a.re - b.re, a.im - b.im}; }
inline Box operator-(const Box& a) { return {-a.re, -a.im}; }
inline Box conj(const Box& a) { return {a.re, -a.im}; }

inline Box operator*(const Box& a, const Box& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Box square(const Box& a) {
    return {square(a.re) - square(a.im), scale(a.re * a.im, BigRat(2))};
}

inline Box scale(const Box& a, const BigRat& c) { return {scale(a.re, c), scale(a.im, c)}; }

inline Interval mag_sq(const Box& a) { return square(a.re) + square(a.im); }

inline Box operator/(const Box& a, const Box& b) {
    Interval m2 = mag_sq(b);
    if (m2.contains_zero()) throw RefineNeeded{"complex interval division across zero"};
    Box n = a * conj(b);
    return {n.re / m2, n.im / m2};
}

inline Box round_out(const Box& a, long bits) { return {round_out(a.re, bits), round_out(a.im, bits)}; }

// Division with directed rounding straight to ~bits significant dyadic
// digits. Equivalent enclosure to a * recip(b) followed by round_out, but
// never materializes exact quotients. Point inputs keep the exact quotient.
inline Interval div_out(const Interval& a, const Interval& b, long bits) {
    if (b.contains_zero()) throw RefineNeeded{"interval division across zero"};
    if (a.is_point() && b.is_point()) return Interval::point(a.lo / b.lo);
    const BigRat am = a.mag_upper();
    if (am == 0) return Interval::point(BigRat(0));
    const BigRat bm = std::min(rat_abs(b.lo), rat_abs(b.hi));
    const long s = bits - (mag_bits(am) - mag_bits(bm));
    Interval out{rat_div_floor(a.lo, b.lo, s), rat_div_ceil(a.lo, b.lo, s)};
    for (auto [x, y] : {std::pair<const BigRat&, const BigRat&>{a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}}) {
        out.lo = std::min(out.lo, rat_div_floor(x, y, s));
        out.hi = std::max(out.hi, rat_div_ceil(x, y, s));
    }
    return out;
}

inline Box div_out(const Box& a, const Box& b, long bits) {
    Interval m2 = mag_sq(b);
    if (m2.contains_zero()) throw RefineNeeded{"complex interval division across zero"};
    Box n = a * conj(b);
    return {div_out(n.re, m2, bits), div_out(n.im, m2, bits)};
}

inline Box pow_n(const Box& base, unsigned long e, long bits) {
    Box out = Box::point(BigRat(1));
    Box b = base;
    while (e != 0) {
        if (e & 1u) out = round_out(out * b, bits);
        e >>= 1u;
        if (e != 0) b = round_out(square(b), bits);
    }
    return out;
}

inline bool overlaps(const Box& a, const Box& b) { return overlaps(a.re, b.re) && overlaps(a.im, b.im); }

}  // namespace gvseq
