#pragma once

#include <optional>
#include <vector>

#include "gvseq/matrix.hpp"
#include "gvseq/poly.hpp"
#include "gvseq/roots.hpp"

namespace gvseq {

// Order-r linear recurrence, defined by a monic characteristic polynomial
// with nonzero constant term and the initial terms a_0 .. a_{r-1}.
struct LinearRecurrence {
    Poly char_poly;
    std::vector<BigRat> init;

    unsigned long order() const { return static_cast<unsigned long>(char_poly.degree()); }
};

inline LinearRecurrence new_recurrence(Poly char_poly, std::vector<BigRat> init) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "characteristic polynomial needs degree >= 1");
    if (!char_poly.is_monic()) raise(Errc::NotMonic, "characteristic polynomial must be monic");
    if (char_poly.coeff(0) == 0) raise(Errc::ZeroRoot, "characteristic polynomial has constant term 0");
    if (init.size() != static_cast<std::size_t>(char_poly.degree()))
        raise(Errc::LengthMismatch, "expected " + std::to_string(char_poly.degree()) + " initial terms, got " +
                                        std::to_string(init.size()));
    return {std::move(char_poly), std::move(init)};
}

// Terms a_0 .. a_N, by iterating a_n = -sum_i c_i a_{n-r+i} where the c_i are
// the non-leading coefficients of the characteristic polynomial.
inline std::vector<BigRat> terms_upto(const LinearRecurrence& rec, unsigned long n_max) {
    const std::size_t r = rec.init.size();
    std::vector<BigRat> a = rec.init;
    a.reserve(std::max<std::size_t>(n_max + 1, r));
    for (std::size_t n = r; n <= n_max; ++n) {
        BigRat next(0);
        for (std::size_t i = 0; i < r; ++i) next -= rec.char_poly.coeff(i) * a[n - r + i];
        a.push_back(std::move(next));
    }
    a.resize(n_max + 1);
    return a;
}

inline BigRat term(const LinearRecurrence& rec, unsigned long n) { return terms_upto(rec, n)[n]; }

// The r impulse sequences X^(k): same characteristic polynomial, initial
// conditions X^(k)_j = delta_{jk}.
struct ImpulseBasis {
    Poly char_poly;
    std::vector<LinearRecurrence> sequences;

    unsigned long order() const { return sequences.size(); }

    // terms [k][n] for n = 0 .. n_max
    std::vector<std::vector<BigRat>> table(unsigned long n_max) const {
        std::vector<std::vector<BigRat>> t;
        t.reserve(sequences.size());
        for (const auto& s : sequences) t.push_back(terms_upto(s, n_max));
        return t;
    }
};

inline ImpulseBasis impulse_basis(const Poly& char_poly) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "impulse basis needs degree >= 1");
    const std::size_t r = static_cast<std::size_t>(char_poly.degree());
    ImpulseBasis basis;
    basis.char_poly = char_poly;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<BigRat> init(r, BigRat(0));
        init[k] = 1;
        basis.sequences.push_back(new_recurrence(char_poly, std::move(init)));
    }
    return basis;
}

// Coefficients of the unique impulse decomposition a_n = sum_k c_k X^(k)_n.
// Evaluating at n = j < r forces c_j = a_j, so the coefficient vector is the
// initial-terms vector itself.
inline std::vector<BigRat> decompose(const LinearRecurrence& rec) { return rec.init; }

struct NondegeneracyVerdict {
    enum class Status { NonDegenerate, ZeroRoot, UnityRatio };

    Status status = Status::NonDegenerate;
    std::optional<unsigned long> witness;  // order of the offending root of unity

    bool non_degenerate() const { return status == Status::NonDegenerate; }
};

// Ratio polynomial R(x) = Res_y(f(y), f(x*y)), whose roots are the ratios of
// the roots of f, in primitive integer form. Computed by evaluating the
// resultant at deg(R)+1 sample points and interpolating exactly.
inline Poly ratio_poly(const Poly& f) {
    if (f.is_zero() || f.degree() < 1) raise(Errc::InvalidArgument, "ratio_poly needs degree >= 1");
    const unsigned long r = static_cast<unsigned long>(f.degree());
    const unsigned long dr = r * r;

    std::vector<BigRat> xs, ys;
    long t = 0;
    while (xs.size() < dr + 1) {
        ++t;
        for (long s : {t, -t}) {
            if (xs.size() == dr + 1) break;
            BigRat tv(s);
            std::vector<BigRat> scaled(f.coeffs());
            BigRat p(1);
            for (std::size_t k = 0; k < scaled.size(); ++k) {
                scaled[k] *= p;
                p *= tv;
            }
            xs.push_back(tv);
            ys.push_back(resultant(f, Poly(std::move(scaled))));
        }
    }

    // Newton-form interpolation, exact over Q.
    std::vector<BigRat> coeffs(ys);
    for (std::size_t level = 1; level < coeffs.size(); ++level)
        for (std::size_t i = coeffs.size(); i-- > level;)
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level]);
    Poly result = Poly::constant(coeffs.back());
    for (std::size_t i = coeffs.size() - 1; i-- > 0;)
        result = result * Poly({-xs[i], BigRat(1)}) + Poly::constant(coeffs[i]);

    auto [pz, scale] = detail::to_primitive_int(result);
    (void)scale;
    return detail::from_int(pz);
}

// Non-degeneracy: all roots nonzero and no ratio of distinct roots is a root
// of unity. The ratio 1 appears in R with structural multiplicity sum(m_l^2);
// any excess, or a common factor with a cyclotomic polynomial Phi_k for k up
// to the largest K with phi(K) <= deg R, witnesses degeneracy.
inline NondegeneracyVerdict nondegeneracy_check(const Poly& f) {
    if (f.is_zero()) raise(Errc::InvalidArgument, "nondegeneracy_check of zero polynomial");
    if (f.degree() >= 1 && f.coeff(0) == 0) return {NondegeneracyVerdict::Status::ZeroRoot, std::nullopt};
    if (f.degree() < 2) return {NondegeneracyVerdict::Status::NonDegenerate, std::nullopt};

    const Poly R = ratio_poly(f);
    const unsigned long dr = static_cast<unsigned long>(R.degree());

    unsigned long one_mult = 0;
    {
        Poly probe = R;
        const Poly x_minus_1 = Poly::from_ints({-1, 1});
        while (probe.degree() >= 1) {
            auto [q, rem] = divrem(probe, x_minus_1);
            if (!rem.is_zero()) break;
            ++one_mult;
            probe = q;
        }
    }
    if (one_mult > yun_squarefree(f).sum_multiplicity_squares())
        return {NondegeneracyVerdict::Status::UnityRatio, 1};

    for (unsigned long k = 2; k <= 2 * dr * dr; ++k) {
        if (euler_phi(k) > dr) continue;
        if (poly_gcd(R, cyclotomic(k)).degree() > 0) return {NondegeneracyVerdict::Status::UnityRatio, k};
    }
    return {NondegeneracyVerdict::Status::NonDegenerate, std::nullopt};
}

// Coefficients c^(k)_{i,j} of X^(k)_n = sum_j sum_i c^(k)_{i,j} n^i alpha_j^n,
// obtained by solving the confluent Vandermonde system
// sum_j sum_i c^(k)_{i,j} t^i alpha_j^t = delta_{kt}, t = 0..r-1 (0^0 = 1).
struct SpectralCoefficients {
    Poly char_poly;
    RootStructure roots;            // distinct roots alpha_j with multiplicities m_j
    std::vector<Matrix<Box>> by_k;  // by_k[k](j, i): root index j, power i (i < m_j; unused slots 0)
    bool exact = false;

    const Box& entry(std::size_t k, std::size_t j, std::size_t i) const { return by_k[k](j, i); }
};

namespace detail {

// System matrix M[t][(j,i)] = t^i alpha_j^t, identical to W(1).
inline Matrix<Box> spectral_system(const RootStructure& rs, long bits) {
    const std::size_t r = static_cast<std::size_t>(rs.source.degree());
    Matrix<Box> m(r, r);
    std::size_t col = 0;
    for (const auto& b : rs.boxes) {
        Box alpha = box_of(b);
        for (unsigned i = 0; i < b.multiplicity; ++i, ++col) {
            for (std::size_t t = 0; t < r; ++t) {
                BigRat ti = i == 0 ? BigRat(1) : rat_pow(BigRat(BigInt(t), 1), static_cast<long>(i));
                m(t, col) = scale(pow_n(alpha, t, bits), ti);
            }
        }
    }
    return m;
}

}  // namespace detail

inline SpectralCoefficients spectral_coefficients(const Poly& char_poly, const BigRat& precision) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "spectral_coefficients needs degree >= 1");
    if (char_poly.coeff(0) == 0) raise(Errc::ZeroRoot, "characteristic polynomial has constant term 0");
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");
    const std::size_t r = static_cast<std::size_t>(char_poly.degree());

    SpectralCoefficients sc;
    sc.char_poly = char_poly;
    sc.roots = isolate_roots(char_poly, precision);
    sc.exact = sc.roots.all_rational();

    long bits = std::max<long>(128, 64 - mag_bits(precision));
    const long cap = precision_bit_cap();
    while (true) {
        try {
            Matrix<Box> lhs = detail::spectral_system(sc.roots, bits);
            Matrix<Box> rhs(r, r);
            for (std::size_t t = 0; t < r; ++t)
                for (std::size_t k = 0; k < r; ++k) rhs(t, k) = Box::point(BigRat(t == k ? 1 : 0));
            Matrix<Box> sol = interval_solve(lhs, rhs, bits);

            BigRat max_width(0);
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t t = 0; t < r; ++t) max_width = std::max(max_width, sol(t, c).width());
            if (sc.exact || max_width <= precision) {
                sc.by_k.clear();
                for (std::size_t k = 0; k < r; ++k) {
                    Matrix<Box> entry(sc.roots.boxes.size(), r);
                    std::size_t row_base = 0;
                    for (std::size_t j = 0; j < sc.roots.boxes.size(); ++j) {
                        for (unsigned i = 0; i < sc.roots.boxes[j].multiplicity; ++i)
                            entry(j, i) = sol(row_base + i, k);
                        row_base += sc.roots.boxes[j].multiplicity;
                    }
                    sc.by_k.push_back(std::move(entry));
                }
                return sc;
            }
        } catch (const RefineNeeded&) {
        }
        bits *= 2;
        if (bits > cap) raise(Errc::PrecisionExhausted, "spectral system certification exceeded precision cap");
        sc.roots = refine(sc.roots, rat_pow2(-bits / 2));
    }
}

}  // namespace gvseq
