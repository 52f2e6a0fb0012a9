#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dskp/gaussian_rational.hpp"
#include "dskp/multipoly.hpp"

namespace dskp {

template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t r, size_t c) : rows_(r), cols_(c), data_(r * c) {}
    Matrix(size_t r, size_t c, const T& fill) : rows_(r), cols_(c), data_(r * c, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    static Matrix identity(size_t n, const T& one, const T& zero) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

  private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

// Exact determinant over a field, Gaussian elimination with first
// nonzero pivot (deterministic).
template <class F>
F det(Matrix<F> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    size_t n = m.rows();
    F result = field_from_int<F>(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && is_zero(m(piv, col))) ++piv;
        if (piv == n) return field_from_int<F>(0);
        if (piv != col) {
            for (size_t c = col; c < n; ++c) std::swap(m(piv, c), m(col, c));
            result = -result;
        }
        result *= m(col, col);
        F inv = inverse(m(col, col));
        for (size_t r = col + 1; r < n; ++r) {
            if (is_zero(m(r, col))) continue;
            F factor = m(r, col) * inv;
            for (size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return result;
}

// Exact inverse over a field (Gauss-Jordan); throws on singular input.
template <class F>
Matrix<F> inverse_matrix(Matrix<F> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows();
    Matrix<F> inv = Matrix<F>::identity(n, field_from_int<F>(1), field_from_int<F>(0));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && is_zero(m(piv, col))) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (size_t c = 0; c < n; ++c) {
                std::swap(m(piv, c), m(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        F pi = inverse(m(col, col));
        for (size_t c = 0; c < n; ++c) {
            m(col, c) *= pi;
            inv(col, c) *= pi;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(m(r, col))) continue;
            F f = m(r, col);
            for (size_t c = 0; c < n; ++c) {
                m(r, c) -= f * m(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

template <class F>
F matrix_entry_sum(const Matrix<F>& m) {
    F s = field_from_int<F>(0);
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) s += m(r, c);
    return s;
}

// Nullspace basis of an r x c matrix over a field, via reduced row
// echelon form with leftmost-pivot selection. Basis vectors are emitted
// in increasing free-column order, so the result is deterministic.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
    size_t r = m.rows(), c = m.cols();
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < c && row < r; ++col) {
        size_t piv = row;
        while (piv < r && is_zero(m(piv, col))) ++piv;
        if (piv == r) continue;
        if (piv != row)
            for (size_t k = 0; k < c; ++k) std::swap(m(piv, k), m(row, k));
        F pi = inverse(m(row, col));
        for (size_t k = 0; k < c; ++k) m(row, k) *= pi;
        for (size_t rr = 0; rr < r; ++rr) {
            if (rr == row || is_zero(m(rr, col))) continue;
            F f = m(rr, col);
            for (size_t k = 0; k < c; ++k) m(rr, k) -= f * m(row, k);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(c, false);
    for (size_t pc : pivot_col) is_pivot[pc] = true;
    std::vector<std::vector<F>> basis;
    for (size_t free = 0; free < c; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(c, field_from_int<F>(0));
        v[free] = field_from_int<F>(1);
        for (size_t p = 0; p < pivot_col.size(); ++p) v[pivot_col[p]] = -m(p, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Fraction-free determinant over an integral domain (Bareiss). Used for
// the symbolic route where entries are polynomials.
template <class Coeff>
MultiPolyT<Coeff> det_bareiss(Matrix<MultiPolyT<Coeff>> m) {
    using P = MultiPolyT<Coeff>;
    if (m.rows() != m.cols()) throw std::invalid_argument("det_bareiss: not square");
    size_t n = m.rows();
    if (n == 0) return P::constant(Coeff(1));
    P prev = P::constant(Coeff(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m(piv, k).is_zero()) ++piv;
        if (piv == n) return P::zero();
        if (piv != k) {
            for (size_t c = k; c < n; ++c) std::swap(m(piv, c), m(k, c));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                P num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = exact_divide(num, prev);
            }
        prev = m(k, k);
    }
    P d = m(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

// Number of spanning trees of an undirected multigraph rooted at a given
// vertex (Kirchhoff), exact.
inline mpz_class spanning_tree_count(size_t n, const std::vector<std::pair<size_t, size_t>>& edges,
                                     size_t root) {
    if (n <= 1) return 1;
    Matrix<Rational> lap(n - 1, n - 1, Rational(0));
    auto idx = [&](size_t v) { return v < root ? v : v - 1; };
    for (auto& [u, v] : edges) {
        if (u == v) continue;
        if (u != root && v != root) {
            lap(idx(u), idx(v)) -= 1;
            lap(idx(v), idx(u)) -= 1;
        }
        if (u != root) lap(idx(u), idx(u)) += 1;
        if (v != root) lap(idx(v), idx(v)) += 1;
    }
    Rational d = det(lap);
    return d.get_num();
}

} // namespace dskp
