#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gvseq/interval.hpp"
#include "gvseq/matrix.hpp"
#include "gvseq/recurrence.hpp"
#include "gvseq/roots.hpp"

namespace gvseq {

// The (r-1) x (r-1) impulse-term matrix with entry (h, k) = X^(k)_{h n} for
// h, k = 1 .. r-1. At n = 1 it is the identity.
struct GvMatrix {
    unsigned long n = 0;
    Matrix<BigRat> entries;
};

inline GvMatrix impulse_matrix(const Poly& char_poly, unsigned long n) {
    if (char_poly.degree() < 2) raise(Errc::InvalidArgument, "impulse matrix needs order >= 2");
    const std::size_t r = static_cast<std::size_t>(char_poly.degree());
    ImpulseBasis basis = impulse_basis(char_poly);
    GvMatrix gm;
    gm.n = n;
    gm.entries = Matrix<BigRat>(r - 1, r - 1);
    for (std::size_t k = 1; k < r; ++k) {
        std::vector<BigRat> terms = terms_upto(basis.sequences[k], (r - 1) * n);
        for (std::size_t h = 1; h < r; ++h) gm.entries(h - 1, k - 1) = terms[h * n];
    }
    return gm;
}

// Exact determinant D(n) of the impulse-term matrix. Order 1 uses the empty
// 0x0 matrix, so D = 1; n = 0 gives D = 0 for order >= 2 because every
// impulse sequence with k >= 1 starts at 0.
inline BigRat gv_det_exact(const Poly& char_poly, unsigned long n) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "gv_det_exact needs degree >= 1");
    if (char_poly.degree() == 1) return BigRat(1);
    return bareiss_det(impulse_matrix(char_poly, n).entries);
}

// The closed form's root-free ingredients, computed from the squarefree
// decomposition alone: the exponent of n and, per squarefree factor of
// multiplicity e, the product of that factor's roots with exponent C(e,2).
struct ExponentStructure {
    struct FactorConstant {
        BigRat root_product;      // (-1)^deg(g) * g(0) / lc(g)
        unsigned long exponent;   // binomial(e, 2)
        unsigned multiplicity;    // e
        unsigned long factor_degree;
    };

    unsigned long n_exponent = 0;  // sum over distinct roots of binomial(m_l, 2)
    std::vector<FactorConstant> factor_constants;
};

inline ExponentStructure exponent_structure(const Poly& char_poly) {
    if (char_poly.is_zero()) raise(Errc::InvalidArgument, "exponent_structure of zero polynomial");
    if (char_poly.coeff(0) == 0) raise(Errc::ZeroRoot, "exponent_structure needs nonzero constant term");
    ExponentStructure es;
    for (const auto& [g, e] : yun_squarefree(char_poly).factors) {
        const unsigned long deg = static_cast<unsigned long>(g.degree());
        es.n_exponent += deg * binom2(e);
        BigRat prod = g.coeff(0) / g.lc();
        if (deg % 2 == 1) prod = -prod;
        es.factor_constants.push_back({prod, binom2(e), e, deg});
    }
    return es;
}

// Closed-form value: an exact rational when every root is rational, a
// certified real interval of width < precision otherwise.
struct CfValue {
    std::optional<BigRat> exact;
    Interval interval;

    bool is_exact() const { return exact.has_value(); }

    Interval as_interval() const { return is_exact() ? Interval::point(*exact) : interval; }

    bool contains(const BigRat& v) const { return is_exact() ? *exact == v : interval.contains(v); }

    std::string to_string() const { return is_exact() ? rat_to_string(*exact) : interval.to_string(); }
};

namespace detail {

// Pairwise product prod_{i<j} ((alpha_j^n - alpha_i^n) / (alpha_j - alpha_i))^(m_i m_j)
// over exact rational roots.
inline BigRat pairwise_exact(const std::vector<std::pair<BigRat, unsigned>>& roots, unsigned long n) {
    BigRat out(1);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            BigRat num = rat_pow(roots[j].first, static_cast<long>(n)) - rat_pow(roots[i].first, static_cast<long>(n));
            BigRat den = roots[j].first - roots[i].first;
            out *= rat_pow(num / den, static_cast<long>(roots[i].second) * roots[j].second);
        }
    return out;
}

// Same product over certified root boxes.
inline Box pairwise_interval(const RootStructure& rs, unsigned long n, long bits) {
    Box out = Box::point(BigRat(1));
    std::vector<Box> alpha, alpha_n;
    for (const auto& b : rs.boxes) {
        alpha.push_back(box_of(b));
        alpha_n.push_back(pow_n(alpha.back(), n, bits));
    }
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::size_t j = i + 1; j < alpha.size(); ++j) {
            Box ratio = round_out((alpha_n[j] - alpha_n[i]) / (alpha[j] - alpha[i]), bits);
            unsigned long e = static_cast<unsigned long>(rs.boxes[i].multiplicity) * rs.boxes[j].multiplicity;
            out = round_out(out * pow_n(ratio, e, bits), bits);
        }
    return out;
}

inline void validate_char_poly(const Poly& char_poly) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "characteristic polynomial needs degree >= 1");
    if (!char_poly.is_monic()) raise(Errc::NotMonic, "characteristic polynomial must be monic");
    if (char_poly.coeff(0) == 0) raise(Errc::ZeroRoot, "characteristic polynomial has constant term 0");
}

}  // namespace detail

struct GvResult;

// Closed-form engine with state reused across indices: the certified root
// structure and the working precision survive between calls, so a sweep over
// many n refines the roots once instead of once per evaluation.
class ClosedFormEvaluator {
  public:
    explicit ClosedFormEvaluator(Poly char_poly) : f_(std::move(char_poly)) {
        detail::validate_char_poly(f_);
        order_ = static_cast<unsigned long>(f_.degree());
        if (order_ >= 2) {
            es_ = exponent_structure(f_);
            rats_ = rational_roots(f_);
            unsigned long rational_mult = 0;
            for (const auto& [root, m] : rats_) rational_mult += m;
            all_rational_ = rational_mult == order_;
        }
    }

    const Poly& char_poly() const { return f_; }

    CfValue closed_form(unsigned long n, const BigRat& precision) {
        if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");
        if (order_ == 1) return {BigRat(1), {}};
        if (n == 0) return {BigRat(0), {}};

        BigRat scalar = rat_pow(BigRat(BigInt(n), 1), static_cast<long>(es_.n_exponent));
        for (const auto& fc : es_.factor_constants)
            scalar *= rat_pow(fc.root_product, static_cast<long>(fc.exponent * (n - 1)));
        if (all_rational_) return {scalar * detail::pairwise_exact(rats_, n), {}};

        if (!roots_) {
            roots_ = isolate_roots(f_, rat_pow2(-128));
            bits_ = 192;
        }
        const long cap = precision_bit_cap();
        while (true) {
            bool refine_signal = false;
            BigRat width(-1);
            try {
                Box total = scale(detail::pairwise_interval(*roots_, n, bits_), scalar);
                if (total.im.contains_zero() && total.re.width() < precision)
                    return {std::nullopt, total.re};
                width = total.re.width() + total.im.width();
            } catch (const RefineNeeded&) {
                refine_signal = true;
            }
            // Jump close to the precision the measured width demands instead
            // of creeping toward it one doubling at a time.
            long next = bits_ * 2;
            if (!refine_signal && width > 0)
                next = std::max(next, bits_ + (mag_bits(width) - mag_bits(precision)) + 64);
            bits_ = next;
            if (bits_ > cap)
                raise(Errc::PrecisionExhausted, "closed-form evaluation exceeded the working-precision cap");
            roots_ = refine(*roots_, rat_pow2(-(bits_ - 64)));
        }
    }

    GvResult result(unsigned long n, const BigRat& precision);

  private:
    Poly f_;
    unsigned long order_ = 0;
    ExponentStructure es_;
    std::vector<std::pair<BigRat, unsigned>> rats_;
    bool all_rational_ = false;
    std::optional<RootStructure> roots_;
    long bits_ = 0;
};

inline CfValue gv_det_closed_form(const Poly& char_poly, unsigned long n, const BigRat& precision) {
    return ClosedFormEvaluator(char_poly).closed_form(n, precision);
}

enum class Agreement { Exact, IntervalContains, Mismatch };

inline const char* agreement_name(Agreement a) {
    switch (a) {
        case Agreement::Exact: return "exact";
        case Agreement::IntervalContains: return "interval_contains";
        case Agreement::Mismatch: return "mismatch";
    }
    return "unknown";
}

// Both evaluation paths side by side. Mismatch signals a broken identity and
// is treated as a hard failure by every consumer.
struct GvResult {
    unsigned long n = 0;
    BigRat d_exact;
    CfValue closed_form;
    Agreement agreement = Agreement::Mismatch;
};

inline GvResult ClosedFormEvaluator::result(unsigned long n, const BigRat& precision) {
    GvResult res;
    res.n = n;
    res.d_exact = gv_det_exact(f_, n);
    res.closed_form = closed_form(n, precision);
    if (res.closed_form.is_exact())
        res.agreement = *res.closed_form.exact == res.d_exact ? Agreement::Exact : Agreement::Mismatch;
    else
        res.agreement = res.closed_form.interval.contains(res.d_exact) ? Agreement::IntervalContains
                                                                       : Agreement::Mismatch;
    return res;
}

inline GvResult gv_result(const Poly& char_poly, unsigned long n, const BigRat& precision) {
    return ClosedFormEvaluator(char_poly).result(n, precision);
}

// Confluent Vandermonde matrix W(n) = [A_1 ... A_s], where block A_l is
// r x m_l with entry (h, c) = (h n)^c * alpha_l^(h n) (0^0 = 1). Every block's
// first row is (1, 0, ..., 0). The determinant enclosure is exact when all
// roots are rational.
struct ConfluentW {
    unsigned long n = 0;
    RootStructure roots;  // block l corresponds to roots.boxes[l]
    std::vector<Matrix<Box>> blocks;
    Box determinant;

    Matrix<Box> assembled() const {
        std::size_t r = blocks.empty() ? 0 : blocks.front().rows();
        std::size_t cols = 0;
        for (const auto& b : blocks) cols += b.cols();
        Matrix<Box> m(r, cols);
        std::size_t base = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m(i, base + j) = b(i, j);
            base += b.cols();
        }
        return m;
    }
};

namespace detail {

inline std::vector<Matrix<Box>> build_w_blocks(const RootStructure& rs, unsigned long n, long bits) {
    const std::size_t r = static_cast<std::size_t>(rs.source.degree());
    std::vector<Matrix<Box>> blocks;
    for (const auto& b : rs.boxes) {
        Box alpha_n = pow_n(box_of(b), n, bits);
        Matrix<Box> block(r, b.multiplicity);
        for (std::size_t h = 0; h < r; ++h) {
            Box alpha_hn = pow_n(alpha_n, h, bits);  // alpha^(h n)
            const BigInt hn = BigInt(h) * BigInt(n);
            BigRat hn_pow(1);
            for (std::size_t c = 0; c < b.multiplicity; ++c) {
                if (c > 0) hn_pow = c == 1 ? BigRat(hn, 1) : hn_pow * hn;
                block(h, c) = h == 0 ? Box::point(BigRat(c == 0 ? 1 : 0)) : scale(alpha_hn, hn_pow);
            }
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace detail

inline ConfluentW confluent_w(const Poly& char_poly, unsigned long n, const BigRat& precision) {
    detail::validate_char_poly(char_poly);
    if (n == 0) raise(Errc::InvalidArgument, "confluent_w needs n >= 1");
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");

    RootStructure rs = isolate_roots(char_poly, rat_pow2(-64));
    long bits = 192;
    const long cap = precision_bit_cap();
    while (true) {
        try {
            ConfluentW w;
            w.n = n;
            w.roots = rs;
            w.blocks = detail::build_w_blocks(rs, n, bits);
            w.determinant = interval_det(w.assembled(), bits);
            BigRat mag = rat_abs(w.determinant.re.mid()) + rat_abs(w.determinant.im.mid());
            if (w.determinant.width() <= precision * std::max(BigRat(1), mag)) return w;
        } catch (const RefineNeeded&) {
        }
        bits *= 2;
        if (bits > cap) raise(Errc::PrecisionExhausted, "confluent determinant exceeded the precision cap");
        rs = refine(rs, rat_pow2(-bits / 2));
    }
}

// Certified enclosure of det W(n) / det W(1), refined until its width is
// below `precision`. The ratio equals D(n), so the enclosure must bracket
// gv_det_exact(char_poly, n); n = 1 compares a matrix with itself and is 1
// by definition.
inline Interval confluent_ratio(const Poly& char_poly, unsigned long n, const BigRat& precision) {
    detail::validate_char_poly(char_poly);
    if (n == 0) raise(Errc::InvalidArgument, "confluent_ratio needs n >= 1");
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");
    if (n == 1) return Interval::point(BigRat(1));

    RootStructure rs = isolate_roots(char_poly, rat_pow2(-64));
    long bits = 192;
    const long cap = precision_bit_cap();
    while (true) {
        try {
            Box det_n = interval_det(ConfluentW{n, rs, detail::build_w_blocks(rs, n, bits), {}}.assembled(), bits);
            Box det_1 = interval_det(ConfluentW{1, rs, detail::build_w_blocks(rs, 1, bits), {}}.assembled(), bits);
            Box ratio = det_n / det_1;
            if (ratio.im.contains_zero() && ratio.re.width() < precision) return ratio.re;
        } catch (const RefineNeeded&) {
        }
        bits *= 2;
        if (bits > cap) raise(Errc::PrecisionExhausted, "confluent ratio exceeded the precision cap");
        rs = refine(rs, rat_pow2(-bits / 2));
    }
}

// Node of a generalized Vandermonde configuration: a value with the number
// of derivative columns it generates.
struct WeightedNode {
    BigRat value;
    unsigned multiplicity = 1;
};

namespace detail {

inline void validate_nodes(const std::vector<WeightedNode>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].value == 0) raise(Errc::ZeroNode, "generalized Vandermonde node must be nonzero");
        if (nodes[i].multiplicity == 0) raise(Errc::InvalidArgument, "node multiplicity must be positive");
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].value == nodes[j].value)
                raise(Errc::DuplicateNode, "generalized Vandermonde nodes must be distinct");
    }
}

}  // namespace detail

// Explicit block matrix [B_{m_1}(X_1) ... B_{m_s}(X_s)] with entry
// (t, c) = t^c * X^t inside each block (0^0 = 1); the c-th column applies
// the operator X d/dX c times to the plain power column.
inline Matrix<BigRat> flowe_harris_matrix(const std::vector<WeightedNode>& nodes) {
    detail::validate_nodes(nodes);
    std::size_t r = 0;
    for (const auto& nd : nodes) r += nd.multiplicity;
    Matrix<BigRat> m(r, r);
    std::size_t col = 0;
    for (const auto& nd : nodes) {
        for (unsigned c = 0; c < nd.multiplicity; ++c, ++col) {
            BigRat xt(1);
            for (std::size_t t = 0; t < r; ++t) {
                BigRat tc = c == 0 ? BigRat(1) : rat_pow(BigRat(BigInt(t), 1), static_cast<long>(c));
                m(t, col) = tc * xt;
                xt *= nd.value;
            }
        }
    }
    return m;
}

// Closed-form determinant of the block matrix above:
// prod_l prod_{j=1}^{m_l - 1} j! * X_l^C(m_l,2) * prod_{i<j} (X_j - X_i)^(m_i m_j).
inline BigRat flowe_harris(const std::vector<WeightedNode>& nodes) {
    detail::validate_nodes(nodes);
    BigRat out(1);
    for (const auto& nd : nodes) {
        for (unsigned j = 1; j < nd.multiplicity; ++j) out *= factorial(j);
        out *= rat_pow(nd.value, static_cast<long>(binom2(nd.multiplicity)));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            out *= rat_pow(nodes[j].value - nodes[i].value,
                           static_cast<long>(nodes[i].multiplicity) * nodes[j].multiplicity);
    return out;
}

}  // namespace gvseq
