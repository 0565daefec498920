#pragma once

#include "l2curve/config.hpp"
#include "l2curve/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <variant>
#include <vector>

namespace l2c {

template <class K> class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, FieldTraits<K>::zero()) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = FieldTraits<K>::one();
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows[0].size()) : 0;
        Matrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    K& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r(x.rows_, x.cols_);
        for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r(x.rows_, x.cols_);
        for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const K& v = x(i, k);
                if (FieldTraits<K>::exact && v == FieldTraits<K>::zero()) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
    friend Matrix operator*(const K& c, const Matrix& x) {
        Matrix r(x.rows_, x.cols_);
        for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = c * x.a_[i];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix apply shape mismatch");
        std::vector<K> r(rows_, FieldTraits<K>::zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix kron(const Matrix& y) const {
        Matrix r(rows_ * y.rows_, cols_ * y.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                for (int k = 0; k < y.rows_; ++k)
                    for (int l = 0; l < y.cols_; ++l)
                        r(i * y.rows_ + k, j * y.cols_ + l) = (*this)(i, j) * y(k, l);
        return r;
    }

    // Columns of `b` appended to the right.
    Matrix hstack(const Matrix& b) const {
        if (rows_ != b.rows_) throw std::invalid_argument("hstack shape mismatch");
        Matrix r(rows_, cols_ + b.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < b.cols_; ++j) r(i, cols_ + j) = b(i, j);
        }
        return r;
    }
    Matrix vstack(const Matrix& b) const {
        if (cols_ != b.cols_) throw std::invalid_argument("vstack shape mismatch");
        Matrix r(rows_ + b.rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(rows_ + i, j) = b(i, j);
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const K& v : a_) m = std::max(m, FieldTraits<K>::abs(v));
        return m;
    }

    bool is_zero(double tau) const {
        double scale = std::max(1.0, max_abs());
        if (FieldTraits<K>::exact) scale = 1.0;
        for (const K& v : a_)
            if (!FieldTraits<K>::is_zero(v, FieldTraits<K>::exact ? 1.0 : scale, tau)) return false;
        return true;
    }

  private:
    static void check_same(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<K> a_;
};

// Row echelon reduction in place.  Float mode uses scaled partial pivoting
// with threshold tau * (max absolute entry of the input).  Returns pivot
// column indices.
template <class K>
std::vector<int> rref_in_place(Matrix<K>& m, double tau) {
    double scale = FieldTraits<K>::exact ? 1.0 : std::max(1.0, m.max_abs());
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        double best_abs = 0;
        for (int i = row; i < m.rows(); ++i) {
            double a = FieldTraits<K>::abs(m(i, col));
            if (FieldTraits<K>::is_zero(m(i, col), scale, tau)) continue;
            if (FieldTraits<K>::exact) {
                best = i;
                break;
            }
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        K inv = FieldTraits<K>::one() / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
        m(row, col) = FieldTraits<K>::one();
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            K f = m(i, col);
            if (FieldTraits<K>::is_zero(f, scale, tau)) {
                m(i, col) = FieldTraits<K>::zero();
                continue;
            }
            for (int j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
            m(i, col) = FieldTraits<K>::zero();
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K> int rank(const Matrix<K>& m, double tau = 1e-9) {
    Matrix<K> w = m;
    return static_cast<int>(rref_in_place(w, tau).size());
}

// Basis of the null space as columns of the returned matrix; satisfies
// rank + nullity = cols.
template <class K> Matrix<K> kernel_basis(const Matrix<K>& m, double tau = 1e-9) {
    Matrix<K> w = m;
    std::vector<int> pivots = rref_in_place(w, tau);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    int nullity = m.cols() - static_cast<int>(pivots.size());
    Matrix<K> basis(m.cols(), nullity);
    int col = 0;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(free, col) = FieldTraits<K>::one();
        for (size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], col) = -w(static_cast<int>(r), free);
        ++col;
    }
    assert(col == nullity);
    return basis;
}

template <class K> Matrix<K> inverse(const Matrix<K>& m, double tau = 1e-9) {
    if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<K> aug = m.hstack(Matrix<K>::identity(m.rows()));
    std::vector<int> pivots = rref_in_place(aug, tau);
    if (static_cast<int>(pivots.size()) != m.rows()) throw std::domain_error("matrix not invertible");
    Matrix<K> inv(m.rows(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) inv(i, j) = aug(i, m.cols() + j);
    return inv;
}

// Least k <= cap with m^k = I, or nullopt ("infinite within cap").
template <class K>
std::optional<int> matrix_order(const Matrix<K>& m, int cap, double tau = 1e-9) {
    if (!m.is_square()) throw std::invalid_argument("matrix_order of non-square matrix");
    if (rank(m, tau) != m.rows()) throw std::domain_error("matrix_order of non-invertible matrix");
    Matrix<K> id = Matrix<K>::identity(m.rows());
    Matrix<K> p = m;
    for (int k = 1; k <= cap; ++k) {
        if ((p - id).is_zero(tau)) return k;
        p = p * m;
    }
    return std::nullopt;
}

// N = log(u) for unipotent u, by the finite series log(I + (u-I)).
template <class K> Matrix<K> nilpotent_log(const Matrix<K>& u, double tau = 1e-9) {
    if (!u.is_square()) throw std::invalid_argument("nilpotent_log of non-square matrix");
    int n = u.rows();
    Matrix<K> x = u - Matrix<K>::identity(n);
    // Unipotence check: (u - I)^n = 0.
    Matrix<K> p = x;
    for (int k = 1; k < n; ++k) p = p * x;
    if (!p.is_zero(tau)) throw std::domain_error("nilpotent_log of non-unipotent matrix");
    Matrix<K> result(n, n);
    Matrix<K> power = x;
    for (int j = 1; j <= n; ++j) {
        K coeff = FieldTraits<K>::one() / FieldTraits<K>::from_int(j % 2 == 1 ? j : -j);
        result = result + coeff * power;
        if (j < n) power = power * x;
    }
    return result;
}

template <class K> Matrix<K> matrix_exp_nilpotent(const Matrix<K>& n_mat) {
    int n = n_mat.rows();
    Matrix<K> result = Matrix<K>::identity(n);
    Matrix<K> term = Matrix<K>::identity(n);
    for (int j = 1; j <= n; ++j) {
        term = (FieldTraits<K>::one() / FieldTraits<K>::from_int(j)) * (term * n_mat);
        result = result + term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Subspace toolkit.  A subspace is held as a matrix whose columns span it;
// canonicalization row-reduces the transpose so equal spans compare equal.

template <class K> Matrix<K> column_space_basis(const Matrix<K>& m, double tau = 1e-9) {
    Matrix<K> t = m.transpose();
    std::vector<int> pivots = rref_in_place(t, tau);
    Matrix<K> basis(m.rows(), static_cast<int>(pivots.size()));
    for (int r = 0; r < basis.cols(); ++r)
        for (int i = 0; i < m.rows(); ++i) basis(i, r) = t(r, i);
    return basis;
}

template <class K> Matrix<K> subspace_sum(const Matrix<K>& a, const Matrix<K>& b, double tau = 1e-9) {
    return column_space_basis(a.hstack(b), tau);
}

// Intersection via the kernel of [A | -B].
template <class K> Matrix<K> subspace_intersection(const Matrix<K>& a, const Matrix<K>& b, double tau = 1e-9) {
    if (a.cols() == 0 || b.cols() == 0) return Matrix<K>(a.rows(), 0);
    Matrix<K> neg_b = FieldTraits<K>::from_int(-1) * b;
    Matrix<K> ker = kernel_basis(a.hstack(neg_b), tau);
    Matrix<K> vectors(a.rows(), ker.cols());
    for (int c = 0; c < ker.cols(); ++c) {
        for (int i = 0; i < a.rows(); ++i) {
            K acc = FieldTraits<K>::zero();
            for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * ker(j, c);
            vectors(i, c) = acc;
        }
    }
    return column_space_basis(vectors, tau);
}

// True when v lies in the span of the columns of basis.
template <class K> bool in_span(const Matrix<K>& basis, const std::vector<K>& v, double tau = 1e-9) {
    Matrix<K> vec(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) vec(static_cast<int>(i), 0) = v[i];
    return rank(basis.hstack(vec), tau) == rank(basis, tau);
}

// Solve m x = b; nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve_linear(const Matrix<K>& m, const std::vector<K>& b, double tau = 1e-9) {
    Matrix<K> vec(static_cast<int>(b.size()), 1);
    for (size_t i = 0; i < b.size(); ++i) vec(static_cast<int>(i), 0) = b[i];
    Matrix<K> aug = m.hstack(vec);
    std::vector<int> pivots = rref_in_place(aug, tau);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<K> x(m.cols(), FieldTraits<K>::zero());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), m.cols());
    return x;
}

// Preimage {x : m x in span(s)} as a column basis.
template <class K> Matrix<K> preimage(const Matrix<K>& m, const Matrix<K>& s, double tau = 1e-9) {
    // x in preimage iff [m | -s] (x, y) = 0 for some y.
    Matrix<K> neg_s = FieldTraits<K>::from_int(-1) * s;
    Matrix<K> ker = kernel_basis(m.hstack(neg_s), tau);
    Matrix<K> xs(m.cols(), ker.cols());
    for (int c = 0; c < ker.cols(); ++c)
        for (int i = 0; i < m.cols(); ++i) xs(i, c) = ker(i, c);
    return column_space_basis(xs, tau);
}

} // namespace l2c
