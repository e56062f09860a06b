#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gvseq/interval.hpp"
#include "gvseq/poly.hpp"

namespace gvseq {

// Certified complex disk around one distinct root of a source polynomial.
// The closed disk |z - center| <= radius contains exactly that root, and
// `multiplicity` is the root's multiplicity in the source polynomial.
// Rational roots are stored exactly with radius 0.
struct RootBox {
    BigRat re;
    BigRat im;
    BigRat radius;
    unsigned multiplicity = 1;

    bool is_exact() const { return radius == 0; }
};

// Square enclosure of the disk, for interval evaluation.
inline Box box_of(const RootBox& b) {
    return {Interval{b.re - b.radius, b.re + b.radius}, Interval{b.im - b.radius, b.im + b.radius}};
}

struct RootStructure {
    Poly source;
    SquarefreeDecomposition decomposition;
    std::vector<RootBox> boxes;  // pairwise disjoint, sum of multiplicities = deg(source)

    unsigned long order() const { return static_cast<unsigned long>(source.degree()); }
    unsigned long distinct_count() const { return boxes.size(); }

    bool all_rational() const {
        return std::all_of(boxes.begin(), boxes.end(), [](const RootBox& b) { return b.is_exact(); });
    }
};

// All rational roots of f with multiplicities, found by candidate testing on
// the primitive integer image of each squarefree factor.
inline std::vector<std::pair<BigRat, unsigned>> rational_roots(const Poly& f) {
    if (f.is_zero()) raise(Errc::InvalidArgument, "rational_roots of zero polynomial");
    std::vector<std::pair<BigRat, unsigned>> out;
    for (const auto& [g, e] : yun_squarefree(f).factors) {
        if (g.coeff(0) == 0) out.emplace_back(BigRat(0), e);
        auto [gz, scale] = detail::to_primitive_int(g);
        (void)scale;
        while (!gz.empty() && gz.front() == 0) gz.erase(gz.begin());
        if (detail::degz(gz) < 1) continue;
        auto divisors = [](BigInt v) {
            std::vector<BigInt> d;
            v = int_abs(v);
            for (BigInt i = 1; i * i <= v; ++i) {
                if (v % i == 0) {
                    d.push_back(i);
                    if (i * i != v) d.push_back(v / i);
                }
            }
            return d;
        };
        for (const BigInt& p : divisors(gz.front())) {
            for (const BigInt& q : divisors(gz.back())) {
                for (int s : {1, -1}) {
                    BigRat cand(s * p, q);
                    if (g.eval(cand) == 0) out.emplace_back(cand, e);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

// Exact complex rational value; the working type of the software
// floating-point iteration (endpoints kept dyadic by explicit rounding).
struct QC {
    BigRat re{0};
    BigRat im{0};

    friend QC operator+(const QC& a, const QC& b) { return {a.re + b.re, a.im + b.im}; }
    friend QC operator-(const QC& a, const QC& b) { return {a.re - b.re, a.im - b.im}; }
    friend QC operator*(const QC& a, const QC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
};

inline BigRat qc_mag_sq(const QC& a) { return a.re * a.re + a.im * a.im; }

inline QC qc_div(const QC& a, const QC& b) {
    BigRat m = qc_mag_sq(b);
    if (m == 0) raise(Errc::DivideByZero, "complex division by zero");
    return {(a.re * b.re + a.im * b.im) / m, (a.im * b.re - a.re * b.im) / m};
}

// Rounded complex division for the iteration loop; numerator and modulus
// stay dyadic, the quotient is rounded straight to the working granularity.
inline QC qc_div_round(const QC& a, const QC& b, long bits) {
    BigRat m = qc_mag_sq(b);
    if (m == 0) raise(Errc::DivideByZero, "complex division by zero");
    return {rat_div_round(a.re * b.re + a.im * b.im, m, bits),
            rat_div_round(a.im * b.re - a.re * b.im, m, bits)};
}

inline QC qc_round(const QC& a, long bits) { return {dyadic_round(a.re, bits), dyadic_round(a.im, bits)}; }

inline QC qc_eval(const Poly& p, const QC& z) {
    QC acc{BigRat(0), BigRat(0)};
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + QC{c[i], BigRat(0)};
    return acc;
}

// Horner evaluation with per-step rounding; keeps iteration operands at the
// working precision. Certification always re-evaluates exactly.
inline QC qc_eval_rounded(const Poly& p, const QC& z, long bits) {
    QC acc{BigRat(0), BigRat(0)};
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = qc_round(acc * z + QC{c[i], BigRat(0)}, bits);
    return acc;
}

inline BigRat from_double(double v) {
    // Doubles are binary rationals, so this conversion is exact.
    if (v == 0.0 || !std::isfinite(v)) return BigRat(0);
    int exp = 0;
    double m = std::frexp(v, &exp);
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    BigRat out(mant, 1);
    long shift = exp - 53;
    return out * rat_pow2(shift);
}

// One Aberth-Ehrlich simultaneous-iteration sweep set at the given working
// precision. Returns the (possibly unconverged) approximations; rigor comes
// from the certification step, never from the iteration itself.
inline void aberth_sweeps(const Poly& h, std::vector<QC>& z, long bits, int sweeps) {
    const Poly hd = h.derivative();
    const std::size_t d = z.size();
    const BigRat tol = rat_pow2(-(bits - 16));
    for (int s = 0; s < sweeps; ++s) {
        BigRat max_step(0);
        BigRat scale(1);
        for (const QC& v : z) scale = std::max(scale, qc_mag_sq(v));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (i != j && z[i] == z[j]) z[j].re += rat_pow2(-(bits / 2)) * BigInt(j + 1);
            }
            QC p = qc_eval_rounded(h, z[i], bits);
            if (p.re == 0 && p.im == 0) continue;
            QC pd = qc_eval_rounded(hd, z[i], bits);
            if (pd.re == 0 && pd.im == 0) {
                z[i].re += rat_pow2(-(bits / 2));
                continue;
            }
            QC newton = qc_div_round(p, pd, bits);
            QC sum{BigRat(0), BigRat(0)};
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                sum = sum + qc_div_round(QC{BigRat(1), BigRat(0)}, z[i] - z[j], bits);
            }
            QC denom = qc_round(QC{BigRat(1), BigRat(0)} - newton * sum, bits);
            QC w = qc_mag_sq(denom) == 0 ? newton : qc_div_round(newton, denom, bits);
            z[i] = qc_round(z[i] - w, bits);
            max_step = std::max(max_step, qc_mag_sq(w));
        }
        if (max_step <= tol * tol * scale) break;
    }
}

struct CertifiedDisk {
    QC center;
    BigRat radius;
};

// A-posteriori certification of simple-root approximations. With the
// Gershgorin-style bound r_i = d*|h(z_i)| / (|lc|*prod_{j!=i}|z_i - z_j|),
// the union of the disks D(z_i, r_i) covers all roots of h and a connected
// component of m disks contains exactly m roots; pairwise disjoint disks
// therefore isolate one root each. All bounds are evaluated in exact
// rational arithmetic; the radius is then rounded up to a compact dyadic,
// which keeps the certificate valid (a larger disk still contains the root)
// and keeps downstream interval arithmetic off huge representations.
inline bool smith_certify(const Poly& h, const std::vector<QC>& z, const BigRat& target,
                          std::vector<CertifiedDisk>& out, long bits) {
    const std::size_t d = z.size();
    const BigRat lc2 = h.lc() * h.lc();
    std::vector<BigRat> radius(d);
    for (std::size_t i = 0; i < d; ++i) {
        BigRat prod2(1);
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            BigRat sep = qc_mag_sq(z[i] - z[j]);
            if (sep == 0) return false;
            prod2 *= sep;
        }
        BigRat r2 = BigRat(BigInt(d) * BigInt(d), 1) * qc_mag_sq(qc_eval(h, z[i])) / (lc2 * prod2);
        radius[i] = dyadic_ceil(rat_sqrt_upper(dyadic_ceil(r2, 2 * bits + 32)), bits + 16);
        if (radius[i] > target) return false;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            BigRat rr = radius[i] + radius[j];
            if (qc_mag_sq(z[i] - z[j]) <= rr * rr) return false;
        }
    out.clear();
    for (std::size_t i = 0; i < d; ++i) out.push_back({z[i], radius[i]});
    return true;
}

// Forces the approximation set of a real polynomial into an exactly
// conjugate-symmetric configuration: the Sturm count fixes how many
// approximations are real, the rest are averaged into conjugate pairs.
inline bool symmetrize_conjugates(std::vector<QC>& z, unsigned long n_real) {
    std::vector<std::size_t> idx(z.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return rat_abs(z[a].im) < rat_abs(z[b].im);
    });
    std::vector<QC> result;
    result.reserve(z.size());
    for (std::size_t k = 0; k < n_real; ++k) result.push_back({z[idx[k]].re, BigRat(0)});
    std::vector<QC> upper, lower;
    for (std::size_t k = n_real; k < idx.size(); ++k) {
        const QC& v = z[idx[k]];
        (v.im > 0 ? upper : lower).push_back(v);
    }
    if (upper.size() != lower.size()) return false;
    for (const QC& u : upper) {
        std::size_t best = lower.size();
        BigRat best_d(0);
        for (std::size_t j = 0; j < lower.size(); ++j) {
            BigRat dd = qc_mag_sq(u - QC{lower[j].re, -lower[j].im});
            if (best == lower.size() || dd < best_d) {
                best = j;
                best_d = dd;
            }
        }
        if (best == lower.size()) return false;
        QC mean{(u.re + lower[best].re) / 2, (u.im - lower[best].im) / 2};
        result.push_back(mean);
        result.push_back({mean.re, -mean.im});
        lower.erase(lower.begin() + static_cast<std::ptrdiff_t>(best));
    }
    if (result.size() != z.size()) return false;
    z = std::move(result);
    return true;
}

// Isolates all roots of a squarefree polynomial with no rational roots.
// Working precision doubles until the certified radii reach the target.
inline std::vector<CertifiedDisk> certify_factor(const Poly& h, const BigRat& target,
                                                 std::vector<QC> warm = {}) {
    const int d = h.degree();
    const unsigned long n_real = sturm_real_root_count(h);
    long bits = std::max<long>(128, 64 - mag_bits(target));
    const long cap = precision_bit_cap();

    std::vector<QC> z = std::move(warm);
    if (z.size() != static_cast<std::size_t>(d)) {
        z.clear();
        double radius = 1.0;
        for (int i = 0; i < d; ++i) {
            double c = std::abs(boost::multiprecision::numerator(h.coeff(static_cast<std::size_t>(i)) / h.lc())
                                    .convert_to<double>() /
                                boost::multiprecision::denominator(h.coeff(static_cast<std::size_t>(i)) / h.lc())
                                    .convert_to<double>());
            radius = std::max(radius, 1.0 + c);
        }
        radius = std::min(radius, 1e9);
        for (int k = 0; k < d; ++k) {
            double th = 2.0 * 3.14159265358979323846 * k / d + 0.43;
            z.push_back({from_double(radius * std::cos(th)), from_double(radius * std::sin(th))});
        }
    }

    std::vector<CertifiedDisk> disks;
    while (bits <= cap) {
        for (QC& v : z) v = qc_round(v, bits);
        aberth_sweeps(h, z, bits, 60 + 12 * d);
        std::vector<QC> sym = z;
        if (symmetrize_conjugates(sym, n_real) && smith_certify(h, sym, target, disks, bits)) return disks;
        if (smith_certify(h, z, target, disks, bits)) return disks;
        bits *= 2;
    }
    raise(Errc::PrecisionExhausted, "root certification exceeded the working-precision cap");
}

inline BigRat disk_dist_sq(const RootBox& a, const RootBox& b) {
    BigRat dr = a.re - b.re, di = a.im - b.im;
    return dr * dr + di * di;
}

inline bool disks_disjoint(const RootBox& a, const RootBox& b) {
    BigRat rr = a.radius + b.radius;
    return disk_dist_sq(a, b) > rr * rr;
}

}  // namespace detail

// Certified root isolation: one disjoint disk per distinct root of f, radii
// at most `precision`, multiplicities taken from the squarefree structure.
inline RootStructure isolate_roots(const Poly& f, const BigRat& precision) {
    if (f.is_zero() || f.degree() < 1) raise(Errc::InvalidArgument, "isolate_roots needs degree >= 1");
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");

    RootStructure rs;
    rs.source = f;
    rs.decomposition = yun_squarefree(f);

    BigRat target = precision;
    const BigRat target_floor = rat_pow2(-precision_bit_cap());
    while (true) {
        rs.boxes.clear();
        for (const auto& [g, e] : rs.decomposition.factors) {
            std::vector<RootBox> factor_boxes;
            Poly h = g;
            for (const auto& [root, mult] : rational_roots(g)) {
                (void)mult;  // within one squarefree factor every root is simple
                factor_boxes.push_back({root, BigRat(0), BigRat(0), e});
                h = div_exact(h, Poly({-root, BigRat(1)}));
            }
            if (h.degree() > 0) {
                for (const auto& disk : detail::certify_factor(h, target))
                    factor_boxes.push_back({disk.center.re, disk.center.im, disk.radius, e});
            }
            std::sort(factor_boxes.begin(), factor_boxes.end(), [](const RootBox& a, const RootBox& b) {
                return a.re != b.re ? a.re < b.re : a.im < b.im;
            });
            rs.boxes.insert(rs.boxes.end(), factor_boxes.begin(), factor_boxes.end());
        }
        bool disjoint = true;
        for (std::size_t i = 0; i < rs.boxes.size() && disjoint; ++i)
            for (std::size_t j = i + 1; j < rs.boxes.size() && disjoint; ++j)
                disjoint = detail::disks_disjoint(rs.boxes[i], rs.boxes[j]);
        if (disjoint) break;
        target /= 1024;
        if (target < target_floor) raise(Errc::PrecisionExhausted, "cross-factor separation failed");
    }
    return rs;
}

// Shrinks every certified radius to at most `precision`. Boxes keep their
// order, rational boxes are untouched, and radii never grow.
inline RootStructure refine(const RootStructure& rs, const BigRat& precision) {
    if (precision <= 0) raise(Errc::InvalidArgument, "precision must be positive");
    bool loose = std::all_of(rs.boxes.begin(), rs.boxes.end(),
                             [&](const RootBox& b) { return b.radius <= precision; });
    if (loose) return rs;

    RootStructure out = rs;
    for (const auto& [g, e] : rs.decomposition.factors) {
        std::vector<std::size_t> members;
        std::vector<detail::QC> centers;
        Poly h = g;
        for (std::size_t i = 0; i < rs.boxes.size(); ++i) {
            if (rs.boxes[i].multiplicity != e) continue;
            if (rs.boxes[i].is_exact()) {
                h = div_exact(h, Poly({-rs.boxes[i].re, BigRat(1)}));
            } else {
                members.push_back(i);
                centers.push_back({rs.boxes[i].re, rs.boxes[i].im});
            }
        }
        if (members.empty()) continue;
        if (std::all_of(members.begin(), members.end(),
                        [&](std::size_t i) { return rs.boxes[i].radius <= precision; }))
            continue;
        auto disks = detail::certify_factor(h, precision, centers);
        // Re-attach by nearest old center; old boxes are pairwise disjoint.
        for (const auto& disk : disks) {
            std::size_t best = members.size();
            BigRat best_d(0);
            for (std::size_t k = 0; k < members.size(); ++k) {
                RootBox probe{disk.center.re, disk.center.im, BigRat(0), e};
                BigRat dd = detail::disk_dist_sq(probe, rs.boxes[members[k]]);
                if (best == members.size() || dd < best_d) {
                    best = k;
                    best_d = dd;
                }
            }
            RootBox& slot = out.boxes[members[best]];
            if (disk.radius < slot.radius) slot = {disk.center.re, disk.center.im, disk.radius, e};
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(best));
        }
    }
    return out;
}

}  // namespace gvseq
