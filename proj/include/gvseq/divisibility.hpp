#pragma once

#include <string>
#include <vector>

#include "gvseq/recurrence.hpp"
#include "gvseq/vandermonde.hpp"

namespace gvseq {

namespace detail {

// Divisibility is tested over Z; sequences with non-integral terms are
// rejected rather than coerced.
inline std::vector<BigInt> integral_terms(const LinearRecurrence& rec, unsigned long n_max) {
    std::vector<BigInt> out;
    out.reserve(n_max + 1);
    for (const BigRat& t : terms_upto(rec, n_max)) {
        if (!is_integer(t))
            raise(Errc::NonIntegralSequence, "sequence term " + rat_to_string(t) + " is not an integer");
        out.push_back(rat_num(t));
    }
    return out;
}

}  // namespace detail

// A recorded failure of the divisibility-sequence definition. Pairs with
// m >= 2 mean S_n does not divide S_{m n}; the sentinel pairs (0,0) and
// (1,1) record initial-condition failures S_0 != 0 and S_1 != 1.
struct DivViolation {
    unsigned long n = 0;
    unsigned long m = 0;

    friend bool operator==(const DivViolation& a, const DivViolation& b) { return a.n == b.n && a.m == b.m; }
};

struct TheoremRow {
    unsigned long n = 0;
    BigRat s_n;
    BigRat d_n;
    bool divides = false;
};

struct DivisibilityReport {
    unsigned long checked_up_to = 0;
    bool is_divisibility_prefix = false;
    std::vector<DivViolation> def_violations;
    std::vector<TheoremRow> theorem_results;
    std::vector<unsigned long> theorem_violations;
};

// Checks S_0 = 0, S_1 = 1, and S_n | S_{mn} for every pair with m, n >= 1 and
// m n <= N, using the convention 0 | x iff x = 0.
inline DivisibilityReport check_divisibility_prefix(const LinearRecurrence& rec, unsigned long N) {
    if (N == 0) raise(Errc::InvalidArgument, "prefix bound must be positive");
    const std::vector<BigInt> s = detail::integral_terms(rec, N);
    DivisibilityReport rep;
    rep.checked_up_to = N;
    if (s[0] != 0) rep.def_violations.push_back({0, 0});
    if (N >= 1 && s[1] != 1) rep.def_violations.push_back({1, 1});
    for (unsigned long n = 1; n <= N; ++n)
        for (unsigned long m = 2; m * n <= N; ++m)
            if (!divides_int(s[n], s[m * n])) rep.def_violations.push_back({n, m});
    rep.is_divisibility_prefix = rep.def_violations.empty();
    return rep;
}

// Checks S_n | D(n) for n = 0 .. N, cross-validating each exact determinant
// against the closed form. A path disagreement is a hard error.
inline DivisibilityReport verify_theorem(const LinearRecurrence& rec, unsigned long N,
                                         const BigRat& precision = pow10_inv(30)) {
    if (rec.order() < 2) raise(Errc::InvalidArgument, "verify_theorem needs order >= 2");
    DivisibilityReport rep = check_divisibility_prefix(rec, N);
    const std::vector<BigInt> s = detail::integral_terms(rec, N);
    ClosedFormEvaluator evaluator(rec.char_poly);
    for (unsigned long n = 0; n <= N; ++n) {
        GvResult gr = evaluator.result(n, precision);
        if (gr.agreement == Agreement::Mismatch)
            raise(Errc::PathMismatch, "determinant paths disagree at n = " + std::to_string(n) +
                                          ": exact " + rat_to_string(gr.d_exact) + ", closed form " +
                                          gr.closed_form.to_string());
        const BigInt d = to_integer(gr.d_exact);
        const bool ok = divides_int(s[n], d);
        rep.theorem_results.push_back({n, BigRat(s[n], 1), gr.d_exact, ok});
        if (!ok) rep.theorem_violations.push_back(n);
    }
    return rep;
}

// Cramer-rule witness from the theorem's proof: the impulse matrix at n with
// its first column replaced by (S_n, S_2n, ..., S_{(r-1)n}). Its determinant
// must equal D(n), and for a divisibility sequence S_n divides every entry of
// the replaced column, hence the determinant.
struct CramerCertificate {
    unsigned long n = 0;
    BigRat numerator_det;
    BigRat d_value;
    bool column_divisibility = false;
};

inline CramerCertificate cramer_certificate(const LinearRecurrence& rec, unsigned long n) {
    if (rec.order() < 2) raise(Errc::InvalidArgument, "cramer_certificate needs order >= 2");
    if (n == 0) raise(Errc::InvalidArgument, "cramer_certificate needs n >= 1");
    const unsigned long r = rec.order();
    const std::vector<BigInt> s = detail::integral_terms(rec, (r - 1) * n);
    if (s[0] != 0 || (s.size() > 1 && s[1] != 1))
        raise(Errc::CertificateFailure, "sequence is not a divisibility-sequence candidate (S_0 = 0, S_1 = 1)");

    GvMatrix gm = impulse_matrix(rec.char_poly, n);
    for (unsigned long h = 1; h < r; ++h) gm.entries(h - 1, 0) = BigRat(s[h * n], 1);

    CramerCertificate cert;
    cert.n = n;
    cert.numerator_det = bareiss_det(gm.entries);
    cert.d_value = gv_det_exact(rec.char_poly, n);
    if (cert.numerator_det != cert.d_value)
        raise(Errc::CertificateFailure,
              "replaced-column determinant " + rat_to_string(cert.numerator_det) + " differs from D(" +
                  std::to_string(n) + ") = " + rat_to_string(cert.d_value));
    cert.column_divisibility = true;
    for (unsigned long h = 1; h < r; ++h)
        if (!divides_int(s[n], s[h * n])) cert.column_divisibility = false;
    return cert;
}

// Distinct-root specialization: prod_{i<j} (alpha_j^n - alpha_i^n)/(alpha_j - alpha_i).
// Requires a squarefree characteristic polynomial. Evaluated as the bare
// pairwise product, without the n-power and root-power scalars of the full
// closed form; the two must nevertheless coincide because every
// binomial(m_l, 2) vanishes here.
inline CfValue remark_product(const Poly& char_poly, unsigned long n, const BigRat& precision) {
    detail::validate_char_poly(char_poly);
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");
    for (const auto& [g, e] : yun_squarefree(char_poly).factors)
        if (e > 1) raise(Errc::NotSquarefree, "remark_product needs a squarefree characteristic polynomial");
    const unsigned long r = static_cast<unsigned long>(char_poly.degree());
    if (r == 1) return {BigRat(1), {}};
    if (n == 0) return {BigRat(0), {}};

    const auto rats = rational_roots(char_poly);
    if (rats.size() == r) return {detail::pairwise_exact(rats, n), {}};

    RootStructure rs = isolate_roots(char_poly, rat_pow2(-64));
    long bits = 192;
    const long cap = precision_bit_cap();
    while (true) {
        try {
            Box total = detail::pairwise_interval(rs, n, bits);
            if (total.im.contains_zero() && total.re.width() < precision) return {std::nullopt, total.re};
        } catch (const RefineNeeded&) {
        }
        bits *= 2;
        if (bits > cap) raise(Errc::PrecisionExhausted, "remark product exceeded the working-precision cap");
        rs = refine(rs, rat_pow2(-bits / 2));
    }
}

}  // namespace gvseq
