#pragma once

#include <utility>
#include <vector>

#include "gvseq/interval.hpp"
#include "gvseq/rational.hpp"

namespace gvseq {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, std::move(fill)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

inline Matrix<BigRat> identity_matrix(std::size_t n) {
    Matrix<BigRat> m(n, n, BigRat(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

// Fraction-free Bareiss elimination over Z. Every intermediate division is
// exact; the 0x0 determinant is 1.
inline BigInt bareiss_det_int(Matrix<BigInt> m) {
    if (!m.is_square()) raise(Errc::InvalidArgument, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return BigInt(1);
    int sign = 1;
    BigInt prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return BigInt(0);
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : BigInt(-m(n - 1, n - 1));
}

// Exact determinant of a rational matrix: clears each row's denominators,
// runs integer Bareiss, and divides by the product of the clearing factors.
inline BigRat bareiss_det(const Matrix<BigRat>& m) {
    if (!m.is_square()) raise(Errc::InvalidArgument, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return BigRat(1);
    Matrix<BigInt> z(n, n);
    BigInt clearing(1);
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l(1);
        for (std::size_t j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, rat_den(m(i, j)));
        for (std::size_t j = 0; j < n; ++j) z(i, j) = rat_num(m(i, j)) * (l / rat_den(m(i, j)));
        clearing *= l;
    }
    return BigRat(bareiss_det_int(std::move(z)), clearing);
}

namespace detail {

// Pivot choice for interval elimination: the column entry whose squared
// magnitude has the largest certified lower bound. Throws RefineNeeded when
// every candidate could be zero.
inline std::size_t interval_pivot(const Matrix<Box>& m, std::size_t k) {
    std::size_t best = m.rows();
    BigRat best_lo(-1);
    for (std::size_t i = k; i < m.rows(); ++i) {
        Interval t = mag_sq(m(i, k));
        if (t.lo > best_lo) {
            best_lo = t.lo;
            best = i;
        }
    }
    if (best == m.rows() || best_lo <= 0) throw RefineNeeded{"no interval pivot excludes zero"};
    return best;
}

}  // namespace detail

// Determinant enclosure via interval Gaussian elimination. Exact when all
// entries are points.
inline Box interval_det(Matrix<Box> m, long bits) {
    if (!m.is_square()) raise(Errc::InvalidArgument, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    Box det = Box::point(BigRat(1));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = detail::interval_pivot(m, k);
        if (p != k) {
            m.swap_rows(k, p);
            det = -det;
        }
        const Box pivot = m(k, k);
        det = round_out(det * pivot, bits);
        for (std::size_t i = k + 1; i < n; ++i) {
            Box factor = round_out(m(i, k) / pivot, bits);
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = round_out(m(i, j) - factor * m(k, j), bits);
        }
    }
    return det;
}

// Solves A X = B with interval Gaussian elimination; the result encloses the
// true solution. B is n x m (one column per right-hand side).
inline Matrix<Box> interval_solve(Matrix<Box> a, Matrix<Box> b, long bits) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n) raise(Errc::InvalidArgument, "interval_solve shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = detail::interval_pivot(a, k);
        if (p != k) {
            a.swap_rows(k, p);
            b.swap_rows(k, p);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Box factor = round_out(a(i, k) / a(k, k), bits);
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = round_out(a(i, j) - factor * a(k, j), bits);
            for (std::size_t j = 0; j < b.cols(); ++j)
                b(i, j) = round_out(b(i, j) - factor * b(k, j), bits);
        }
    }
    Matrix<Box> x(n, b.cols());
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = n; i-- > 0;) {
            Box acc = b(i, col);
            for (std::size_t j = i + 1; j < n; ++j) acc = acc - a(i, j) * x(j, col);
            x(i, col) = round_out(acc / a(i, i), bits);
        }
    }
    return x;
}

// Exact rational linear solve (Gaussian elimination with nonzero pivoting).
inline Matrix<BigRat> solve_exact(Matrix<BigRat> a, Matrix<BigRat> b) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n) raise(Errc::InvalidArgument, "solve_exact shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) raise(Errc::InvalidArgument, "singular system");
        if (p != k) {
            a.swap_rows(k, p);
            b.swap_rows(k, p);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            BigRat factor = a(i, k) / a(k, k);
            if (factor == 0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= factor * b(k, j);
        }
    }
    Matrix<BigRat> x(n, b.cols(), BigRat(0));
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = n; i-- > 0;) {
            BigRat acc = b(i, col);
            for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x(j, col);
            x(i, col) = acc / a(i, i);
        }
    }
    return x;
}

}  // namespace gvseq
