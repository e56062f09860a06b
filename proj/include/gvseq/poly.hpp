#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "gvseq/rational.hpp"

namespace gvseq {

// Dense univariate polynomial over the rationals.
//
// Coefficients are stored in ascending degree with no trailing zeros; the
// zero polynomial is the empty list. All operations are exact and pure.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const BigRat& v) { return Poly({v}); }
    static Poly one() { return constant(BigRat(1)); }
    static Poly x() { return Poly({BigRat(0), BigRat(1)}); }

    static Poly monomial(const BigRat& coeff, std::size_t deg) {
        if (coeff == 0) return Poly();
        std::vector<BigRat> c(deg + 1);
        c[deg] = coeff;
        return Poly(std::move(c));
    }

    // Ascending-degree integer coefficient list, e.g. {-1,-1,1} is x^2-x-1.
    static Poly from_ints(std::initializer_list<long> coeffs) {
        std::vector<BigRat> c;
        c.reserve(coeffs.size());
        for (long v : coeffs) c.emplace_back(v);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const BigRat& lc() const {
        if (is_zero()) raise(Errc::InvalidArgument, "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    BigRat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }
    const std::vector<BigRat>& coeffs() const { return c_; }

    BigRat eval(const BigRat& v) const {
        BigRat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<BigRat> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * BigInt(i);
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * Poly::constant(BigRat(1) / lc());
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a) {
        std::vector<BigRat> c(a.c_);
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<BigRat> c(a.c_.size() + b.c_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += c_[i] > 0 ? " + " : " - ";
            else if (c_[i] < 0) out += "-";
            BigRat a = rat_abs(c_[i]);
            if (a != 1 || i == 0) out += rat_to_string(a);
            if (i > 0) {
                if (a != 1) out += "*";
                out += "x";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigRat> c_;
};

inline Poly poly_pow(const Poly& base, unsigned long e) {
    Poly out = Poly::one();
    Poly b = base;
    while (e != 0) {
        if (e & 1u) out = out * b;
        e >>= 1u;
        if (e != 0) b = b * b;
    }
    return out;
}

// Euclidean division; g must be nonzero.
inline std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) raise(Errc::DivideByZero, "polynomial division by zero");
    if (f.degree() < g.degree()) return {Poly(), f};
    std::vector<BigRat> rem(f.coeffs());
    const int dg = g.degree();
    std::vector<BigRat> quot(f.degree() - dg + 1, BigRat(0));
    const BigRat inv_lc = BigRat(1) / g.lc();
    for (int i = f.degree(); i >= dg; --i) {
        BigRat q = rem[static_cast<std::size_t>(i)] * inv_lc;
        if (q == 0) continue;
        quot[static_cast<std::size_t>(i - dg)] = q;
        for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= q * g.coeff(static_cast<std::size_t>(j));
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

// Exact quotient; raises when the division leaves a remainder.
inline Poly div_exact(const Poly& f, const Poly& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) raise(Errc::InvalidArgument, "inexact polynomial division");
    return q;
}

namespace detail {

// Integer polynomial helpers used by the subresultant machinery.
using PolyZ = std::vector<BigInt>;  // ascending, no trailing zeros

inline void trimz(PolyZ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degz(const PolyZ& p) { return static_cast<int>(p.size()) - 1; }

inline BigInt contentz(const PolyZ& p) {
    BigInt g(0);
    for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
    return g;
}

inline PolyZ scale_div(PolyZ p, const BigInt& d) {
    for (auto& c : p) c /= d;
    return p;
}

inline PolyZ primitive_part(PolyZ p) {
    BigInt g = contentz(p);
    if (g == 0) return {};
    if (p.back() < 0) g = -g;
    return scale_div(std::move(p), g);
}

// Pseudo-remainder: exactly lc(b)^(deg a - deg b + 1) * a mod b, both nonzero.
inline PolyZ prem(PolyZ a, const PolyZ& b) {
    const int db = degz(b);
    const BigInt& bl = b.back();
    long e = degz(a) - db + 1;
    while (!a.empty() && degz(a) >= db) {
        const int da = degz(a);
        BigInt head = a.back();
        for (auto& c : a) c *= bl;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(da - db + j)] -= head * b[static_cast<std::size_t>(j)];
        trimz(a);
        --e;
    }
    if (e > 0) {
        const BigInt f = int_pow(bl, static_cast<unsigned long>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

// Splits f as scale * F with F primitive over Z and positive leading term.
inline std::pair<PolyZ, BigRat> to_primitive_int(const Poly& f) {
    if (f.is_zero()) return {PolyZ{}, BigRat(0)};
    BigInt den(1);
    for (const auto& c : f.coeffs()) den = boost::multiprecision::lcm(den, rat_den(c));
    PolyZ p;
    p.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) p.push_back(rat_num(c) * (den / rat_den(c)));
    BigInt cont = contentz(p);
    if (p.back() < 0) cont = -cont;
    return {scale_div(std::move(p), cont), BigRat(cont, den)};
}

inline Poly from_int(const PolyZ& p) {
    std::vector<BigRat> c;
    c.reserve(p.size());
    for (const auto& v : p) c.emplace_back(v);
    return Poly(std::move(c));
}

// Exact integer power quotient g^d / h^(d-1), used by the subresultant PRS.
inline BigInt sub_h(const BigInt& g, const BigInt& h, long d) {
    if (d == 0) return h;
    BigInt n = int_pow(g, static_cast<unsigned long>(d));
    BigInt m = int_pow(h, static_cast<unsigned long>(d - 1));
    return n / m;
}

}  // namespace detail

// Resultant of two nonzero polynomials, computed with the subresultant PRS.
// Res(f,g) = lc(f)^deg(g) * lc(g)^deg(f) * prod over root pairs (alpha - beta).
inline BigRat resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) raise(Errc::InvalidArgument, "resultant of zero polynomial");
    if (f.degree() == 0) return rat_pow(f.lc(), g.degree());
    if (g.degree() == 0) return rat_pow(g.lc(), f.degree());

    auto [A0, sf] = detail::to_primitive_int(f);
    auto [B0, sg] = detail::to_primitive_int(g);
    BigRat scale = rat_pow(sf, g.degree()) * rat_pow(sg, f.degree());

    detail::PolyZ A = std::move(A0), B = std::move(B0);
    int s = 1;
    if (detail::degz(A) < detail::degz(B)) {
        std::swap(A, B);
        if ((detail::degz(A) & 1) && (detail::degz(B) & 1)) s = -s;
    }
    BigInt gg(1), hh(1);
    while (true) {
        const long delta = detail::degz(A) - detail::degz(B);
        if ((detail::degz(A) & 1) && (detail::degz(B) & 1)) s = -s;
        detail::PolyZ R = detail::prem(A, B);
        A = std::move(B);
        BigInt div = gg * int_pow(hh, static_cast<unsigned long>(delta));
        B = detail::scale_div(std::move(R), div);
        if (B.empty()) return BigRat(0);
        gg = A.back();
        hh = detail::sub_h(gg, hh, delta);
        if (detail::degz(B) == 0) {
            const long da = detail::degz(A);
            BigInt res = int_pow(B.back(), static_cast<unsigned long>(da)) /
                         int_pow(hh, static_cast<unsigned long>(da - 1));
            return scale * BigRat(s * res, 1);
        }
    }
}

// Monic gcd over Q[x] via a primitive PRS on cleared integer images.
inline Poly poly_gcd(const Poly& f, const Poly& g) {
    if (f.is_zero()) return g.is_zero() ? Poly() : g.monic();
    if (g.is_zero()) return f.monic();
    auto [A, sa] = detail::to_primitive_int(f);
    auto [B, sb] = detail::to_primitive_int(g);
    (void)sa;
    (void)sb;
    if (detail::degz(A) < detail::degz(B)) std::swap(A, B);
    while (!B.empty()) {
        detail::PolyZ R = detail::primitive_part(detail::prem(A, B));
        A = std::move(B);
        B = std::move(R);
    }
    return detail::from_int(A).monic();
}

// f = unit * prod factor^multiplicity with squarefree, pairwise coprime
// monic factors and strictly increasing multiplicities.
struct SquarefreeDecomposition {
    struct Factor {
        Poly factor;
        unsigned multiplicity = 1;
    };

    std::vector<Factor> factors;
    BigRat unit{1};

    Poly reconstruct() const {
        Poly out = Poly::constant(unit);
        for (const auto& [g, e] : factors) out = out * poly_pow(g, e);
        return out;
    }

    // s = number of distinct roots.
    unsigned long distinct_roots() const {
        unsigned long s = 0;
        for (const auto& [g, e] : factors) s += static_cast<unsigned long>(g.degree());
        return s;
    }

    // Structural multiplicity of the ratio 1, sum over distinct roots of m^2.
    unsigned long sum_multiplicity_squares() const {
        unsigned long t = 0;
        for (const auto& [g, e] : factors)
            t += static_cast<unsigned long>(g.degree()) * static_cast<unsigned long>(e) * e;
        return t;
    }
};

// Yun's squarefree factorization; f must be nonzero.
inline SquarefreeDecomposition yun_squarefree(const Poly& f) {
    if (f.is_zero()) raise(Errc::InvalidArgument, "squarefree factorization of zero");
    SquarefreeDecomposition out;
    out.unit = f.lc();
    if (f.degree() == 0) return out;
    const Poly F = f.monic();
    const Poly Fd = F.derivative();
    Poly a = poly_gcd(F, Fd);
    Poly b = div_exact(F, a);
    Poly c = div_exact(Fd, a);
    Poly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        Poly p = poly_gcd(b, d);
        if (p.degree() > 0) out.factors.push_back({p, i});
        b = div_exact(b, p);
        c = div_exact(d, p);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// k-th cyclotomic polynomial, by iterated exact division of x^d - 1 over the
// divisors of k. Integer coefficients, degree phi(k).
inline Poly cyclotomic(unsigned long k) {
    if (k == 0) raise(Errc::InvalidArgument, "cyclotomic index must be positive");
    std::vector<unsigned long> divisors;
    for (unsigned long d = 1; d * d <= k; ++d) {
        if (k % d == 0) {
            divisors.push_back(d);
            if (d != k / d) divisors.push_back(k / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    std::map<unsigned long, Poly> phi;
    for (unsigned long d : divisors) {
        Poly num = Poly::monomial(BigRat(1), d) - Poly::one();  // x^d - 1
        for (unsigned long e : divisors) {
            if (e < d && d % e == 0) num = div_exact(num, phi.at(e));
        }
        phi.emplace(d, std::move(num));
    }
    return phi.at(k);
}

// Number of distinct real roots of a squarefree polynomial (Sturm chain).
inline unsigned long sturm_real_root_count(const Poly& f) {
    if (f.degree() <= 0) return 0;
    std::vector<Poly> chain{f, f.derivative()};
    while (!chain.back().is_zero()) {
        const Poly& a = chain[chain.size() - 2];
        const Poly& b = chain.back();
        Poly r = -divrem(a, b).second;
        chain.push_back(std::move(r));
    }
    chain.pop_back();
    auto variations = [&](bool at_plus_inf) {
        int prev = 0;
        unsigned long v = 0;
        for (const Poly& p : chain) {
            if (p.is_zero()) continue;
            int s = sign_of(p.lc());
            if (!at_plus_inf && (p.degree() & 1)) s = -s;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(false) - variations(true);
}

}  // namespace gvseq
