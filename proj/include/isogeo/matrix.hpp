#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace isogeo {

// Dense row-major matrix over a commutative ring T.  Field-only algorithms
// (rref, rank, kernel, inverse) require T to supply inverse()/is_zero().
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(size_t n, const T& one) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    void set_row(size_t i, const std::vector<T>& r) {
        assert(r.size() == cols_);
        for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    void append_row(const std::vector<T>& r) {
        assert(cols_ == 0 || r.size() == cols_);
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // [this | o] side by side
    Matrix augment(const Matrix& o) const {
        assert(rows_ == o.rows_);
        Matrix r(rows_, cols_ + o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    // [this ; o] stacked
    Matrix stack(const Matrix& o) const {
        if (rows_ == 0) return o;
        if (o.rows() == 0) return *this;
        assert(cols_ == o.cols_);
        Matrix r(rows_ + o.rows_, cols_);
        r.a_ = a_;
        r.a_.insert(r.a_.end(), o.a_.begin(), o.a_.end());
        return r;
    }

    Matrix submatrix_cols(const std::vector<size_t>& cols) const {
        Matrix r(rows_, cols.size());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(i, cols[j]);
        return r;
    }

private:
    size_t rows_, cols_;
    std::vector<T> a_;
};

// In-place reduced row echelon form over a field.  Returns pivot columns.
template <typename F>
std::vector<size_t> rref_in_place(Matrix<F>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t sel = r;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(r, sel);
        F inv = m(r, c).inverse();
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            F f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename F>
size_t rank(Matrix<F> m) {
    return rref_in_place(m).size();
}

// Incremental RREF accumulator: feeds rows one at a time, keeping only the
// independent ones.  Suits very tall matrices (jet spans) where the rank is
// bounded by the width.
template <typename F>
class RrefAccumulator {
public:
    explicit RrefAccumulator(size_t cols) : cols_(cols) {}

    size_t cols() const { return cols_; }
    size_t rank() const { return rows_.size(); }

    // Returns true if the row was independent (and was absorbed).
    bool add_row(std::vector<F> row) {
        assert(row.size() == cols_);
        for (size_t k = 0; k < rows_.size(); ++k) {
            const F& f = row[pivots_[k]];
            if (f.is_zero()) continue;
            F c = f;  // pivot rows are normalized to leading 1
            for (size_t j = 0; j < cols_; ++j) row[j] -= c * rows_[k][j];
        }
        size_t lead = cols_;
        for (size_t j = 0; j < cols_; ++j)
            if (!row[j].is_zero()) { lead = j; break; }
        if (lead == cols_) return false;
        F inv = row[lead].inverse();
        for (size_t j = lead; j < cols_; ++j) row[j] *= inv;
        // back-substitute into existing rows to stay fully reduced
        for (size_t k = 0; k < rows_.size(); ++k) {
            const F& f = rows_[k][lead];
            if (f.is_zero()) continue;
            F c = f;
            for (size_t j = 0; j < cols_; ++j) rows_[k][j] -= c * row[j];
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(row));
        return true;
    }

    Matrix<F> to_matrix() const {
        Matrix<F> m(rows_.size(), cols_);
        for (size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
        return m;
    }

    const std::vector<size_t>& pivots() const { return pivots_; }

private:
    size_t cols_;
    std::vector<std::vector<F>> rows_;
    std::vector<size_t> pivots_;
};

// Basis of the left kernel {x : x M = 0}, one row per basis vector.
// x M = 0 is the null space of M^T, read off the RREF of M^T.
template <typename F, typename K>
Matrix<F> left_kernel(const Matrix<F>& m, const K& field) {
    size_t n = m.rows();
    Matrix<F> a = m.transpose();
    std::vector<size_t> pivots = rref_in_place(a);
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivots) is_pivot[c] = true;
    Matrix<F> ker(0, n);
    for (size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> x(n, field.zero());
        x[c] = field.one();
        for (size_t k = 0; k < pivots.size(); ++k)
            x[pivots[k]] = -a(k, c);
        ker.append_row(x);
    }
    return ker;
}

// Solve x A = b for a single row vector b; returns false if inconsistent.
template <typename F, typename K>
bool solve_left(const Matrix<F>& a, const std::vector<F>& b, std::vector<F>& x,
                const K& field) {
    // x A = b  <=>  A^T x^T = b^T
    Matrix<F> sys = a.transpose();
    assert(b.size() == sys.rows());
    Matrix<F> rhs(sys.rows(), 1);
    for (size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    Matrix<F> aug = sys.augment(rhs);
    std::vector<size_t> pivots = rref_in_place(aug);
    size_t n = sys.cols();
    x.assign(n, field.zero());
    for (size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == n) return false;  // pivot in rhs column
        x[pivots[k]] = aug(k, n);
    }
    return true;
}

// Determinant of a square matrix over a field, by Gaussian elimination.
template <typename F, typename K>
F det(Matrix<F> m, const K& field) {
    assert(m.rows() == m.cols());
    size_t n = m.rows();
    F d = field.one();
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && m(sel, c).is_zero()) ++sel;
        if (sel == n) return field.zero();
        if (sel != c) {
            m.swap_rows(c, sel);
            d = -d;
        }
        d *= m(c, c);
        F inv = m(c, c).inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            F f = m(i, c) * inv;
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

// Inverse of a square matrix over a field; throws if singular.
template <typename F, typename K>
Matrix<F> inverse(const Matrix<F>& m, const K& field) {
    assert(m.rows() == m.cols());
    size_t n = m.rows();
    Matrix<F> aug = m.augment(Matrix<F>::identity(n, field.one()));
    std::vector<size_t> pivots = rref_in_place(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Matrix<F> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace isogeo
