#pragma once

#include <cassert>
#include <vector>

#include "matrix.hpp"

namespace isogeo {

// Linear subspace of F^N in canonical form: basis rows in RREF with
// recorded pivot columns.  Two subspaces are equal iff their canonical
// forms are identical, so operator== is exact.
template <typename F>
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    // Span of the rows of m.
    static Subspace span(Matrix<F> m) {
        Subspace s(m.cols());
        std::vector<size_t> piv = rref_in_place(m);
        Matrix<F> b(piv.size(), m.cols());
        for (size_t i = 0; i < piv.size(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
        s.basis_ = b;
        s.pivots_ = piv;
        return s;
    }

    // Span of coordinate axes.
    template <typename K>
    static Subspace coordinate_span(size_t ambient, const std::vector<size_t>& axes,
                                    const K& field) {
        Matrix<F> m(axes.size(), ambient);
        for (size_t i = 0; i < axes.size(); ++i) m(i, axes[i]) = field.one();
        return span(m);
    }

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<size_t>& pivot_cols() const { return pivots_; }

    bool contains(const std::vector<F>& v) const {
        assert(v.size() == ambient_);
        std::vector<F> r = v;
        for (size_t k = 0; k < basis_.rows(); ++k) {
            const F& c = r[pivots_[k]];
            if (c.is_zero()) continue;
            F f = c;
            for (size_t j = 0; j < ambient_; ++j) r[j] -= f * basis_(k, j);
        }
        for (const F& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        assert(ambient_ == o.ambient_);
        for (size_t i = 0; i < o.basis_.rows(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    size_t ambient_;
    Matrix<F> basis_;
    std::vector<size_t> pivots_;
};

template <typename F>
Subspace<F> join(const Subspace<F>& a, const Subspace<F>& b) {
    assert(a.ambient_dim() == b.ambient_dim());
    return Subspace<F>::span(a.basis().stack(b.basis()));
}

// Zassenhaus: row reduce [A | A ; B | 0].  Rows whose left half vanishes
// carry a basis of the intersection in their right half.
template <typename F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
    assert(a.ambient_dim() == b.ambient_dim());
    size_t n = a.ambient_dim();
    Matrix<F> block(a.dim() + b.dim(), 2 * n);
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < n; ++j) {
            block(i, j) = a.basis()(i, j);
            block(i, n + j) = a.basis()(i, j);
        }
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < n; ++j) block(a.dim() + i, j) = b.basis()(i, j);
    rref_in_place(block);
    Matrix<F> inter(0, n);
    for (size_t i = 0; i < block.rows(); ++i) {
        bool left_zero = true;
        for (size_t j = 0; j < n && left_zero; ++j)
            if (!block(i, j).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<F> right(n);
        bool nonzero = false;
        for (size_t j = 0; j < n; ++j) {
            right[j] = block(i, n + j);
            if (!right[j].is_zero()) nonzero = true;
        }
        if (nonzero) inter.append_row(right);
    }
    return Subspace<F>::span(inter);
}

// Image of a subspace under the linear map given by rows-act-on-map:
// each basis row v maps to v * map (map is ambient x target).
template <typename F>
Subspace<F> apply_linear(const Subspace<F>& s, const Matrix<F>& map) {
    assert(s.ambient_dim() == map.rows());
    return Subspace<F>::span(s.basis() * map);
}

}  // namespace isogeo
