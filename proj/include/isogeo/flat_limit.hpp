#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "subspace.hpp"
#include "upoly.hpp"

namespace isogeo {

// A family of row spaces over the parameter line: rows with entries in F[t].
template <typename F>
using PolyMatrix = Matrix<UPoly<F>>;

template <typename F>
Matrix<F> evaluate_at(const PolyMatrix<F>& m, const F& t) {
    Matrix<F> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval(t);
    return r;
}

template <typename F>
Matrix<F> evaluate_at_zero(const PolyMatrix<F>& m) {
    Matrix<F> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).at_zero();
    return r;
}

namespace detail {

// Divide a row by the gcd of its entries (drops t-power and scalar-poly
// content).  Scaling by a unit of the local ring at t=0 never moves the
// flat limit, and removing t-content is exactly the saturation step.
template <typename F>
void strip_row_content(std::vector<UPoly<F>>& row) {
    UPoly<F> g;
    for (const auto& e : row) {
        g = gcd(g, e);
        if (g.degree() == 0) break;
    }
    if (g.is_zero() || g.degree() <= 0) return;
    for (auto& e : row) {
        if (e.is_zero()) continue;
        UPoly<F> q, r;
        e.divmod(g, q, r);
        assert(r.is_zero());
        e = q;
    }
}

template <typename F>
bool row_is_zero(const std::vector<UPoly<F>>& row) {
    for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
}

}  // namespace detail

// Forward fraction-free row echelon over F[t] (cross-multiplication, no
// division beyond content stripping).  Returns pivot columns; m is reduced
// in place and row order among non-pivot rows is preserved.
template <typename F>
std::vector<size_t> echelon_fraction_free(PolyMatrix<F>& m) {
    std::vector<std::vector<UPoly<F>>> rows(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        size_t sel = rows.size();
        for (size_t i = r; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            if (sel == rows.size() ||
                rows[i][c].degree() < rows[sel][c].degree())
                sel = i;
        }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            UPoly<F> a = rows[r][c], b = rows[i][c];
            for (size_t j = 0; j < m.cols(); ++j)
                rows[i][j] = rows[i][j] * a - rows[r][j] * b;
            detail::strip_row_content(rows[i]);
        }
        pivots.push_back(c);
        ++r;
    }
    for (size_t i = 0; i < m.rows(); ++i) m.set_row(i, rows[i]);
    return pivots;
}

// Rank of the matrix over the rational function field F(t).
template <typename F>
size_t generic_rank(PolyMatrix<F> m) {
    return echelon_fraction_free(m).size();
}

template <typename F>
struct FlatLimitResult {
    Subspace<F> limit;
    size_t generic_rank = 0;
    size_t saturation_steps = 0;
};

// Flat limit at t = 0 of the family of row spaces spanned by m(t) for
// generic t.  Saturates the F[t]-row module at t: repeatedly lifts an
// F-linear dependency of the specialized rows to a polynomial combination,
// divides out the t power, and replaces a participating row.  The limit
// has dimension exactly the generic rank.
template <typename F, typename K>
FlatLimitResult<F> flat_limit(const PolyMatrix<F>& m, const K& field) {
    size_t n = m.cols();
    // select a maximal F(t)-independent subset of the rows
    std::vector<std::vector<UPoly<F>>> rows;
    {
        PolyMatrix<F> work(0, n);
        std::vector<std::vector<UPoly<F>>> pivrows;
        std::vector<size_t> pivcols;
        for (size_t i = 0; i < m.rows(); ++i) {
            std::vector<UPoly<F>> red = m.row(i);
            detail::strip_row_content(red);
            for (size_t k = 0; k < pivrows.size(); ++k) {
                const UPoly<F>& e = red[pivcols[k]];
                if (e.is_zero()) continue;
                UPoly<F> a = pivrows[k][pivcols[k]], b = e;
                for (size_t j = 0; j < n; ++j)
                    red[j] = red[j] * a - pivrows[k][j] * b;
                detail::strip_row_content(red);
            }
            if (detail::row_is_zero(red)) continue;
            size_t lead = 0;
            while (red[lead].is_zero()) ++lead;
            size_t pos = 0;
            while (pos < pivcols.size() && pivcols[pos] < lead) ++pos;
            pivcols.insert(pivcols.begin() + pos, lead);
            pivrows.insert(pivrows.begin() + pos, red);
            std::vector<UPoly<F>> orig = m.row(i);
            detail::strip_row_content(orig);
            rows.push_back(std::move(orig));
        }
    }
    size_t r = rows.size();

    FlatLimitResult<F> result;
    result.generic_rank = r;
    size_t steps = 0;
    const size_t step_cap = 16384;
    for (;;) {
        Matrix<F> e(r, n);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < n; ++j) e(i, j) = rows[i][j].at_zero();
        Matrix<F> ker = left_kernel(e, field);
        if (ker.rows() == 0) {
            result.limit = Subspace<F>::span(e);
            result.saturation_steps = steps;
            return result;
        }
        if (++steps > step_cap)
            throw std::runtime_error("flat_limit: saturation did not stabilize");
        std::vector<F> c = ker.row(0);
        std::vector<UPoly<F>> combo(n);
        for (size_t i = 0; i < r; ++i) {
            if (c[i].is_zero()) continue;
            UPoly<F> ci = UPoly<F>::constant(c[i]);
            for (size_t j = 0; j < n; ++j) combo[j] += ci * rows[i][j];
        }
        assert(!detail::row_is_zero(combo));
        size_t v = SIZE_MAX;
        for (const auto& x : combo)
            if (!x.is_zero()) v = std::min(v, x.t_valuation());
        assert(v >= 1 && v != SIZE_MAX);
        for (auto& x : combo)
            if (!x.is_zero()) x = x.shift_down(v);
        detail::strip_row_content(combo);
        size_t target = 0;
        for (size_t i = 0; i < r; ++i)
            if (!c[i].is_zero()) target = i;
        rows[target] = std::move(combo);
    }
}

// Family of intersections (A_t) ∩ (B_t) over F(t), as a polynomial row
// family: Zassenhaus on [A|A ; B|0] with fraction-free echelon.
template <typename F>
PolyMatrix<F> intersect_family(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    assert(a.cols() == b.cols());
    size_t n = a.cols();
    PolyMatrix<F> block(a.rows() + b.rows(), 2 * n);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < n; ++j) {
            block(i, j) = a(i, j);
            block(i, n + j) = a(i, j);
        }
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < n; ++j) block(a.rows() + i, j) = b(i, j);
    echelon_fraction_free(block);
    PolyMatrix<F> inter(0, n);
    for (size_t i = 0; i < block.rows(); ++i) {
        bool left_zero = true;
        for (size_t j = 0; j < n && left_zero; ++j)
            if (!block(i, j).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<UPoly<F>> right(n);
        bool nonzero = false;
        for (size_t j = 0; j < n; ++j) {
            right[j] = block(i, n + j);
            if (!right[j].is_zero()) nonzero = true;
        }
        if (!nonzero) continue;
        detail::strip_row_content(right);
        inter.append_row(right);
    }
    return inter;
}

}  // namespace isogeo
