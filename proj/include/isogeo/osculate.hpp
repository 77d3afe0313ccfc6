#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "convert.hpp"
#include "embed.hpp"
#include "subspace.hpp"

namespace isogeo {

// s-th osculating space of an embedded chart at a base point, stored as the
// span of the affine cone; the cone point itself is the degree-0 row.
template <typename F>
struct OsculatingSpace {
    Variety variety = Variety::GR;
    int n = 0;
    int s = 0;
    ChartPoint<F> base;
    Subspace<F> space;
};

namespace detail {

// Rows = coefficient vectors of the monomials of total degree <= s across
// the coordinates; their span is the osculating cone at the chart origin.
template <typename K>
Subspace<typename K::Elem> coefficient_span(
    const std::vector<MultiPoly<typename K::Elem>>& coords, int s, const K& field) {
    using F = typename K::Elem;
    std::map<Monomial, std::vector<F>> rows;
    for (size_t i = 0; i < coords.size(); ++i)
        for (const auto& [m, c] : coords[i].terms()) {
            if (static_cast<int>(monomial_degree(m)) > s || c.is_zero()) continue;
            auto it = rows.find(m);
            if (it == rows.end())
                it = rows.emplace(m, std::vector<F>(coords.size(), field.zero())).first;
            it->second[i] = c;
        }
    RrefAccumulator<F> acc(coords.size());
    for (auto& [m, row] : rows) acc.add_row(std::move(row));
    return Subspace<F>::span(acc.to_matrix());
}

}  // namespace detail

// Span of the degree-<= s Taylor coefficient vectors at the chart origin.
// Partial derivatives at 0 are monomial coefficients up to nonzero
// factorials, so coefficient extraction is exact and factorial-free.
template <typename K>
Subspace<typename K::Elem> osc_space_jets(const std::vector<MultiPoly<Rational>>& coords,
                                          int s, const K& field) {
    if (s < 0) throw std::invalid_argument("osc_space_jets: negative order");
    std::vector<MultiPoly<typename K::Elem>> lifted;
    lifted.reserve(coords.size());
    for (const auto& c : coords) lifted.push_back(poly_lift(c, field));
    return detail::coefficient_span(lifted, s, field);
}

template <typename K>
Subspace<typename K::Elem> osc_space_jets(const PolyMap& f, int s, const K& field) {
    return osc_space_jets(f.coords, s, field);
}

// Same span recentred at an arbitrary chart point: substitute x -> x + p
// and read the coefficients there.
template <typename K>
Subspace<typename K::Elem> osc_space_jets_at(const PolyMap& f,
                                             const ChartPoint<typename K::Elem>& p, int s,
                                             const K& field) {
    using F = typename K::Elem;
    if (chart_shape(f.variety) != p.shape || f.n != p.n)
        throw std::invalid_argument("osc_space_jets_at: chart point does not match the map");
    if (s < 0) throw std::invalid_argument("osc_space_jets_at: negative order");
    std::vector<F> x = chart_vars_of(p);
    auto lift = [&field](const Rational& c) { return lift_scalar(field, c); };
    std::vector<MultiPoly<F>> sh;
    sh.reserve(f.coords.size());
    for (const auto& c : f.coords) sh.push_back(c.shifted(x, lift));
    return detail::coefficient_span(sh, s, field);
}

template <typename K>
OsculatingSpace<typename K::Elem> osculating_space(const PolyMap& f,
                                                   const ChartPoint<typename K::Elem>& p,
                                                   int s, const K& field) {
    return {f.variety, f.n, s, p, osc_space_jets_at(f, p, s, field)};
}

namespace detail {

// Coordinate indices bucketed by total degree.  The charts emit coordinates
// homogeneous of degree equal to their label order; anything else would
// break the blockwise rank accounting, so it is rejected loudly.
inline std::vector<std::vector<size_t>> degree_blocks(const PolyMap& f) {
    std::vector<std::vector<size_t>> blocks;
    for (size_t i = 0; i < f.coords.size(); ++i) {
        const MultiPoly<Rational>& c = f.coords[i];
        int d = static_cast<int>(c.total_degree());
        for (const auto& [m, coef] : c.terms())
            if (static_cast<int>(monomial_degree(m)) != d)
                throw std::logic_error("degree_blocks: coordinates must be homogeneous");
        if (static_cast<int>(blocks.size()) <= d) blocks.resize(d + 1);
        blocks[d].push_back(i);
    }
    return blocks;
}

// Rank of one homogeneous block of Taylor rows.
template <typename K>
size_t taylor_block_rank(const PolyMap& f, const std::vector<size_t>& block, const K& field) {
    using F = typename K::Elem;
    std::map<Monomial, std::vector<F>> rows;
    for (size_t j = 0; j < block.size(); ++j)
        for (const auto& [m, c] : f.coords[block[j]].terms()) {
            auto it = rows.find(m);
            if (it == rows.end())
                it = rows.emplace(m, std::vector<F>(block.size(), field.zero())).first;
            it->second[j] = lift_scalar(field, c);
        }
    RrefAccumulator<F> acc(block.size());
    for (auto& [m, row] : rows) {
        acc.add_row(std::move(row));
        if (acc.rank() == block.size()) break;
    }
    return acc.rank();
}

}  // namespace detail

// Projective dimensions dims[s] of the osculating filtration at the chart
// origin, 0 <= s <= max_s.  Homogeneity makes the degree blocks touch
// disjoint coordinate axes, so their ranks add.
template <typename K>
std::vector<int64_t> osc_dims_jets(const PolyMap& f, int max_s, const K& field) {
    auto blocks = detail::degree_blocks(f);
    std::vector<int64_t> dims(std::max(max_s + 1, 0));
    int64_t total = 0;
    for (int s = 0; s <= max_s; ++s) {
        if (s < static_cast<int>(blocks.size()) && !blocks[s].empty())
            total += static_cast<int64_t>(detail::taylor_block_rank(f, blocks[s], field));
        dims[s] = total - 1;
    }
    return dims;
}

// Exact filtration dimensions.  A modular block rank equal to the block
// width is already exact (the rational rank is sandwiched between the two);
// any block that falls short is redone over the rationals.
inline std::vector<int64_t> osc_dims_exact(const PolyMap& f, int max_s) {
    GFp fp(2147483647u);
    QQ qq;
    auto blocks = detail::degree_blocks(f);
    std::vector<int64_t> dims(std::max(max_s + 1, 0));
    int64_t total = 0;
    for (int s = 0; s <= max_s; ++s) {
        if (s < static_cast<int>(blocks.size()) && !blocks[s].empty()) {
            size_t r = detail::taylor_block_rank(f, blocks[s], fp);
            if (r < blocks[s].size()) r = detail::taylor_block_rank(f, blocks[s], qq);
            total += static_cast<int64_t>(r);
        }
        dims[s] = total - 1;
    }
    return dims;
}

// Coordinate-axis span of the labels of order <= s.  For the big, skew and
// pfaffian charts this equals the jet span at the origin: every homogeneous
// Taylor block has full column rank, and blocks of different degrees use
// disjoint axes.  The symmetric chart falls short from n = 4 on because of
// the three-term relations among complementary symmetric minors.
template <typename K>
Subspace<typename K::Elem> label_span(Variety v, int n, int s, const K& field) {
    if (s < 0) throw std::invalid_argument("label_span: negative order");
    std::vector<int> ord = label_orders(v, n);
    std::vector<size_t> axes;
    for (size_t i = 0; i < ord.size(); ++i)
        if (ord[i] <= s) axes.push_back(i);
    return Subspace<typename K::Elem>::coordinate_span(ord.size(), axes, field);
}

// The symmetric chart keeps full-rank blocks only through n = 3; from n = 4
// the pair coordinates of each order k >= 2 satisfy linear relations (rank
// C(n,k)^2 - C(n,k-1)C(n,k+1) out of C(n,k)(C(n,k)+1)/2), so the honest
// osculating space is the jet span, a proper subspace of the label span.
template <typename K>
Subspace<typename K::Elem> osc_basis_lg(int n, int s, const K& field) {
    if (s < 0) throw std::invalid_argument("osc_basis_lg: negative order");
    if (n <= 3) return label_span(Variety::LG, n, s, field);
    return osc_space_jets(lg_plucker(n), s, field);
}

template <typename K>
Subspace<typename K::Elem> osc_basis_spinor_pl(int n, int s, const K& field) {
    return label_span(Variety::SPIN_PL, n, s, field);
}

template <typename K>
Subspace<typename K::Elem> osc_basis_spinor_min(int n, int s, const K& field) {
    return label_span(Variety::SPIN_MIN, n, s, field);
}

template <typename K>
Subspace<typename K::Elem> grass_osc_basis(int n, int s, const K& field) {
    return label_span(Variety::GR, n, s, field);
}

// Number of intrinsic coordinates of a given order (layout count).
inline int64_t order_coord_count(Variety v, int n, int k) {
    if (k < 0 || k > n) return 0;
    int64_t b = binom64(n, k);
    switch (v) {
        case Variety::GR: return b * b;
        case Variety::LG: return b * (b + 1) / 2;
        case Variety::SPIN_PL: return b * (b + 1) / 2 - (k % 2 ? b : 0);
        case Variety::SPIN_MIN: return binom64(n, 2 * k);
    }
    return 0;
}

// Rank of the order-k homogeneous Taylor block: the number of linearly
// independent coordinate functions of order exactly k.  Matches the layout
// count except on the symmetric chart, whose degree-k minors only span
// C(n,k)^2 - C(n,k-1)C(n,k+1) dimensions (a two-column Giambelli
// determinant) thanks to the three-term relations; the ranks still sum to
// span_dim + 1.
inline int64_t osc_order_rank(Variety v, int n, int k) {
    if (k < 0 || k > n) return 0;
    if (v == Variety::LG) {
        int64_t b = binom64(n, k);
        return b * b - binom64(n, k - 1) * binom64(n, k + 1);
    }
    return order_coord_count(v, n, k);
}

// Closed-form projective dimension of the order-s osculating space at a
// general point.  The sum clamps itself once s passes the filtration
// threshold, since higher-order ranks vanish.
inline int64_t osc_dim_formula(Variety v, int n, int s) {
    if (s < 0) throw std::invalid_argument("osc_dim_formula: negative order");
    int64_t total = 0;
    for (int k = 0; k <= std::min(s, n); ++k) total += osc_order_rank(v, n, k);
    return std::min(total - 1, span_dim(v, n));
}

// Verdict of the ambient-intersection comparison for one pair chart.
struct WellBehavedReport {
    Variety variety = Variety::LG;
    int n = 0;
    std::vector<bool> equal;  // index s = 0..n
    bool all_equal = true;
};

// Compare, order by order, the lifted jet span of the subvariety with the
// slice of the ambient osculating span by the linear span of the
// subvariety.  The linear span is the lifted top jet span, not the full
// row space of the lift: on the symmetric chart the image only spans a
// proper subspace of the pair-coordinate space from n = 4 on.  Runs in
// full coordinates of the big chart, exactly over the rationals.  Intended
// for n <= 5 (LG) / n <= 6 (pair spinor); larger n is allowed but
// memory-bound.
inline WellBehavedReport check_well_behaved(Variety v, int n) {
    if (v != Variety::LG && v != Variety::SPIN_PL)
        throw std::invalid_argument("check_well_behaved: pair-coordinate charts only");
    if (n < 2) throw std::invalid_argument("check_well_behaved: n >= 2 required");
    QQ qq;
    PolyMap f = (v == Variety::LG) ? lg_plucker(n) : spinor_plucker(n);
    Matrix<Rational> lift = plucker_lift(v, n);
    Subspace<Rational> top = osc_space_jets(f, full_osc_threshold(v, n), qq);
    Subspace<Rational> span_y = apply_linear(top, lift);
    WellBehavedReport rep{v, n, {}, true};
    for (int s = 0; s <= n; ++s) {
        Subspace<Rational> lifted = apply_linear(osc_space_jets(f, s, qq), lift);
        Subspace<Rational> sliced = intersect(grass_osc_basis(n, s, qq), span_y);
        bool eq = (lifted == sliced);
        rep.equal.push_back(eq);
        rep.all_equal = rep.all_equal && eq;
    }
    return rep;
}

// Hard-coded surface scroll sitting inside the Segre of a line times a
// k-space, both charted over the 2k+2 ambient coordinates (products with
// the line first, the k-space factor last), along with the linear slice
// carving the scroll out of the Segre.  The order-2 jets of the scroll fill
// the sliced order-2 jets of the Segre exactly at k = 2 and land strictly
// inside them for k >= 3.
struct ScrollExample {
    int k = 0;
    std::vector<MultiPoly<Rational>> scroll;  // chart variables (u, a)
    std::vector<MultiPoly<Rational>> segre;   // chart variables (u, b0, b2, ..., bk)
    Subspace<Rational> slice;                 // pairs Z_j = Z_{k+j+2}, j = 1..k-1
};

inline ScrollExample scroll_example(int k) {
    if (k < 2) throw std::invalid_argument("scroll_example: k >= 2 required");
    ScrollExample ex;
    ex.k = k;
    size_t amb = 2 * static_cast<size_t>(k + 1);
    auto mono = [](int nv, std::initializer_list<std::pair<int, int>> exps) {
        Monomial m(nv, 0);
        for (auto [var, e] : exps) m[var] = static_cast<uint8_t>(e);
        MultiPoly<Rational> p = MultiPoly<Rational>::constant(Rational(0), nv);
        p.add_term(m, Rational(1));
        return p;
    };
    // scroll chart (u, a): fibre [a : 1] over u, rolled up to degree k
    ex.scroll.reserve(amb);
    ex.scroll.push_back(mono(2, {{0, 1}, {1, 1}}));                          // a u
    for (int i = 1; i <= k; ++i) ex.scroll.push_back(mono(2, {{0, i}}));     // u^i
    ex.scroll.push_back(mono(2, {{1, 1}}));                                  // a
    ex.scroll.push_back(mono(2, {}));                                        // 1
    for (int t = 1; t <= k - 1; ++t) ex.scroll.push_back(mono(2, {{0, t}}));  // u^t
    // Segre chart (u, b0, b2, ..., bk): second factor pinned at b1 = 1
    int nv = k + 1;
    ex.segre.reserve(amb);
    ex.segre.push_back(mono(nv, {{0, 1}, {1, 1}}));
    ex.segre.push_back(mono(nv, {{0, 1}}));
    for (int j = 2; j <= k; ++j) ex.segre.push_back(mono(nv, {{0, 1}, {j, 1}}));
    ex.segre.push_back(mono(nv, {{1, 1}}));
    ex.segre.push_back(mono(nv, {}));
    for (int j = 2; j <= k; ++j) ex.segre.push_back(mono(nv, {{j, 1}}));
    // slice: glue Z_j to Z_{k+j+2}; the remaining four axes stay free
    Matrix<Rational> rows(0, amb);
    std::vector<Rational> r(amb, Rational(0));
    auto push_axes = [&](std::initializer_list<size_t> axes) {
        std::fill(r.begin(), r.end(), Rational(0));
        for (size_t ax : axes) r[ax] = Rational(1);
        rows.append_row(r);
    };
    push_axes({0});
    for (int j = 1; j <= k - 1; ++j)
        push_axes({static_cast<size_t>(j), static_cast<size_t>(k + j + 2)});
    push_axes({static_cast<size_t>(k)});
    push_axes({static_cast<size_t>(k + 1)});
    push_axes({static_cast<size_t>(k + 2)});
    ex.slice = Subspace<Rational>::span(rows);
    return ex;
}

}  // namespace isogeo
