#pragma once

// One-parameter degenerations along chart lines: osculating families over
// F[t], their flat limits at t = 0, and the explicit hyperplane certificates
// that bound where those limits can land.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "convert.hpp"
#include "embed.hpp"
#include "flat_limit.hpp"
#include "indexset.hpp"
#include "osculate.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "subspace.hpp"
#include "variety.hpp"

namespace isogeo {

// Chart line gamma(t) = t * A: gamma(0) is the chart origin, gamma(1) the
// direction point A.  Every embedded coordinate is homogeneous of its label
// order, so the embedded curve is rational of coordinate degree at most
// curve_degree(variety, n).
template <typename F>
struct CurveFamily {
    Variety variety = Variety::GR;
    int n = 0;
    ChartPoint<F> direction;
};

template <typename F>
CurveFamily<F> curve_through(Variety v, int n, ChartPoint<F> direction) {
    if (direction.shape != chart_shape(v) || direction.n != n)
        throw std::invalid_argument("curve_through: direction block does not fit the chart");
    return CurveFamily<F>{v, n, std::move(direction)};
}

// Largest t-degree among the embedded curve's coordinates.
inline int curve_degree(Variety v, int n) { return v == Variety::SPIN_MIN ? n / 2 : n; }

// gamma(t) as a concrete chart point.
template <typename F>
ChartPoint<F> curve_point(const CurveFamily<F>& c, const F& t) {
    Matrix<F> a(c.n, c.n);
    for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j) a(i, j) = c.direction.a(i, j) * t;
    return ChartPoint<F>{c.n, c.direction.shape, std::move(a)};
}

// The skew direction that switches on exactly the designated index pairs.
// Its Pfaffian coordinates are 0/1 indicators of pair unions, the normal
// form the hyperplane certificates below are solved against.
template <typename K>
ChartPoint<typename K::Elem> paired_direction(int n, const K& field) {
    using F = typename K::Elem;
    Matrix<F> a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = field.zero();
    for (auto [x, y] : lambda_pairs(n)) {
        a(x - 1, y - 1) = field.one();
        a(y - 1, x - 1) = -field.one();
    }
    return ChartPoint<F>{n, ChartShape::SKEW, std::move(a)};
}

// Rows spanning the order-s osculating cone along the curve, entries in
// F[t].  Homogeneity makes recentring at t*A exact and cheap: the degree-d
// coefficient of an order-o coordinate, taken at A, reappears at t*A scaled
// by t^(o-d).  Rows are indexed by the chart monomials of degree <= s, so
// the t = 0 specialization is the order-s cone at the origin and a generic
// specialization spans the cone at gamma(t).
template <typename K>
PolyMatrix<typename K::Elem> osc_family(const PolyMap& f,
                                        const CurveFamily<typename K::Elem>& curve, int s,
                                        const K& field) {
    using F = typename K::Elem;
    if (curve.variety != f.variety || curve.n != f.n)
        throw std::invalid_argument("osc_family: curve does not match the map");
    if (s < 0 || s >= full_osc_threshold(f.variety, f.n))
        throw std::invalid_argument("osc_family: order must stay below the full-span threshold");
    std::vector<int> ord = label_orders(f.variety, f.n);
    std::vector<F> x = chart_vars_of(curve.direction);
    auto lift = [&field](const Rational& c) { return lift_scalar(field, c); };
    std::map<Monomial, std::vector<UPoly<F>>> rows;
    for (size_t i = 0; i < f.coords.size(); ++i) {
        MultiPoly<F> at_a = f.coords[i].shifted(x, lift);
        for (const auto& [m, c] : at_a.terms()) {
            if (c.is_zero()) continue;
            int d = monomial_degree(m);
            if (d > ord[i])
                throw std::logic_error("osc_family: coordinate exceeds its label order");
            if (d > s) continue;
            auto it = rows.find(m);
            if (it == rows.end())
                it = rows.emplace(m, std::vector<UPoly<F>>(f.coords.size())).first;
            it->second[i] = UPoly<F>::monomial(c, ord[i] - d);
        }
    }
    PolyMatrix<F> out(0, f.coords.size());
    for (const auto& [m, row] : rows) out.append_row(row);
    return out;
}

// Joint degeneration verdict for a pair of osculating orders.
struct Strong2Report {
    Variety variety = Variety::GR;
    int n = 0;
    int s1 = 0;
    int s2 = 0;
    int trials = 0;           // accepted directions
    int resampled = 0;        // degenerate directions that were redrawn
    int64_t family_dim = -1;  // projective dim of the joined family at generic t
    int64_t limit_dim = -1;   // projective dim of every accepted flat limit
    int64_t target_dim = -1;  // projective dim of the order s1+s2+1 cone at the origin
    bool pass = false;
    std::string field;
    uint64_t seed = 0;
};

// Degenerates span(T^{s1} at the origin, T^{s2} at gamma(t)) to t = 0 along
// random chart lines and checks every limit lands inside T^{s1+s2+1} at the
// origin.  A direction whose joined family has smaller generic rank than
// the best one seen is degenerate: it is redrawn (and counted) rather than
// accepted, so all accepted limits share the generic dimension.
template <typename K, typename F = typename K::Elem>
Strong2Report strong2_check(Variety v, int n, int s1, int s2, const K& field, int trials = 5,
                            uint64_t seed = kDefaultSeed) {
    if (s1 < 0 || s2 < 0) throw std::invalid_argument("strong2_check: orders must be nonnegative");
    if (trials < 1) throw std::invalid_argument("strong2_check: need at least one direction");
    PolyMap f = poly_map_for(v, n);
    Subspace<F> base = osc_space_jets(f, s1, field);
    Subspace<F> target = osc_space_jets(f, s1 + s2 + 1, field);

    const Matrix<F>& bb = base.basis();
    PolyMatrix<F> base_rows(0, base.ambient_dim());
    for (size_t i = 0; i < base.dim(); ++i) {
        std::vector<UPoly<F>> row(base.ambient_dim());
        for (size_t j = 0; j < base.ambient_dim(); ++j) row[j] = UPoly<F>::constant(bb(i, j));
        base_rows.append_row(row);
    }

    Strong2Report rep;
    rep.variety = v;
    rep.n = n;
    rep.s1 = s1;
    rep.s2 = s2;
    rep.target_dim = static_cast<int64_t>(target.dim()) - 1;
    rep.pass = true;
    rep.field = field.descriptor();
    rep.seed = seed;

    std::vector<Subspace<F>> limits;
    size_t best = 0;
    int attempts = 0;
    const int attempt_cap = trials + 32;
    while (static_cast<int>(limits.size()) < trials) {
        if (++attempts > attempt_cap)
            throw std::runtime_error("strong2_check: too many degenerate directions");
        Rng rng = make_rng(derive_seed(seed, static_cast<uint64_t>(attempts)));
        CurveFamily<F> curve =
            curve_through(v, n, random_chart_point(chart_shape(v), n, field, rng));
        FlatLimitResult<F> fl =
            flat_limit(base_rows.stack(osc_family(f, curve, s2, field)), field);
        if (fl.limit.dim() != fl.generic_rank)
            throw std::logic_error("strong2_check: limit dimension drifted from the generic rank");
        if (fl.generic_rank > best) {
            // everything accepted so far was degenerate after all
            rep.resampled += static_cast<int>(limits.size());
            limits.clear();
            best = fl.generic_rank;
        } else if (fl.generic_rank < best) {
            ++rep.resampled;
            continue;
        }
        limits.push_back(std::move(fl.limit));
    }
    for (const Subspace<F>& lim : limits) rep.pass = rep.pass && target.contains(lim);
    rep.trials = trials;
    rep.family_dim = static_cast<int64_t>(best) - 1;
    rep.limit_dim = rep.family_dim;
    return rep;
}

// Square block of the pair-deletion system: row r constrains drop count
// j = alpha - r, columns run through c_{alpha-d2+1}, ..., c_1, giving
// entries C(alpha - r, alpha - d2 + 1 - c).  Nonsingular throughout
// 1 <= d2 <= d1 - 1 <= alpha, which is what pins a solution with c_0 != 0.
inline Matrix<Rational> binomial_matrix(int alpha, int d1, int d2) {
    if (!(1 <= d2 && d2 <= d1 - 1 && d1 - 1 <= alpha))
        throw std::invalid_argument("binomial_matrix: need 1 <= d2 <= d1-1 <= alpha");
    int m = alpha - d2 + 1;
    Matrix<Rational> out(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            out(r, c) = Rational(binom64(alpha - r, alpha - d2 + 1 - c));
    return out;
}

// Coefficient profile of a pair-deletion hyperplane: c_q multiplies every
// label obtained from the top label by deleting q designated pairs.
struct BinomialSystem {
    int alpha = 0;                 // designated pairs inside the top label
    int d1 = 0;                    // half the label size minus s1
    int d2 = 0;                    // half the label size minus s2
    std::vector<Rational> coeffs;  // c_0..c_alpha; c_0 = 1, zero from d1 on
};

// Solves the annihilation constraints for the hyperplane supported on the
// deletion family of `top`: c_0 = 1, c_j = 0 for j >= d1, and
// sum_l C(j, l) c_l = 0 for every drop count j in [d2, alpha].
inline BinomialSystem solve_hyperplane_system(const IndexSet& top, int s1, int s2, int n) {
    if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("solve_hyperplane_system: orders must be nonnegative");
    if (top.empty() || top.size() % 2 != 0 || top.front() < 1 || top.back() > n)
        throw std::invalid_argument(
            "solve_hyperplane_system: label must be a nonempty even subset of 1..n");
    int size = static_cast<int>(top.size());
    if (size <= 2 * s1 + 2 * s2 + 2)
        throw std::invalid_argument("solve_hyperplane_system: label too small for the orders");
    int alpha = alpha_count(top, n);
    int d1 = size / 2 - s1;
    int d2 = size / 2 - s2;
    BinomialSystem sys{alpha, d1, d2, std::vector<Rational>(alpha + 1, Rational(0))};
    sys.coeffs[0] = Rational(1);
    int u = std::min(d1 - 1, alpha);  // live unknowns c_1..c_u; the rest stay pinned at 0
    if (d2 <= alpha) {
        QQ qq;
        Matrix<Rational> m(alpha - d2 + 1, u);
        std::vector<Rational> rhs(alpha - d2 + 1, Rational(-1));
        for (int j = d2; j <= alpha; ++j)
            for (int l = 1; l <= std::min(j, u); ++l)
                m(j - d2, l - 1) = Rational(binom64(j, l));
        std::vector<Rational> x;
        if (!solve_left(m.transpose(), rhs, x, qq))
            throw std::logic_error(
                "solve_hyperplane_system: no hyperplane with nonzero leading coefficient for " +
                set_str(top));
        for (int l = 1; l <= u; ++l) sys.coeffs[l] = x[l - 1];
    }
    return sys;
}

// The certificate as a one-parameter pencil: the coordinate at the label
// with q designated pairs deleted is c_q t^q, every other coordinate 0.
inline std::vector<UPoly<Rational>> hyperplane_pencil(const BinomialSystem& sys,
                                                      const IndexSet& top, int n) {
    std::vector<IndexSet> labels = spinor_min_sets(n);
    std::unordered_map<uint32_t, int> at = label_index_by_mask(labels);
    std::vector<UPoly<Rational>> h(labels.size());
    for (const IndexSet& j : gamma_minus(top, n)) {
        int q = static_cast<int>(top.size() - j.size()) / 2;
        h[static_cast<size_t>(at.at(set_mask(j)))] = UPoly<Rational>::monomial(sys.coeffs[q], q);
    }
    return h;
}

// Checks the certificate annihilates span(T^{s1} at the origin, T^{s2} at
// gamma(t)) along the paired direction, at each sampled parameter value.
inline bool verify_hyperplane(const BinomialSystem& sys, const IndexSet& top, int s1, int s2,
                              int n,
                              const std::vector<Rational>& ts = {Rational(1), Rational(2),
                                                                 Rational(3), Rational(5),
                                                                 Rational(7)}) {
    QQ qq;
    PolyMap f = poly_map_for(Variety::SPIN_MIN, n);
    std::vector<UPoly<Rational>> h = hyperplane_pencil(sys, top, n);
    Subspace<Rational> base = osc_space_jets(f, s1, qq);
    const Matrix<Rational>& bb = base.basis();
    CurveFamily<Rational> curve = curve_through(Variety::SPIN_MIN, n, paired_direction(n, qq));
    PolyMatrix<Rational> fam = osc_family(f, curve, s2, qq);
    for (const Rational& t : ts) {
        std::vector<Rational> hv(h.size());
        for (size_t j = 0; j < h.size(); ++j) hv[j] = h[j].eval(t);
        for (size_t i = 0; i < base.dim(); ++i) {
            Rational dot(0);
            for (size_t j = 0; j < hv.size(); ++j) dot += bb(i, j) * hv[j];
            if (!dot.is_zero()) return false;
        }
        Matrix<Rational> at_t = evaluate_at(fam, t);
        for (size_t i = 0; i < at_t.rows(); ++i) {
            Rational dot(0);
            for (size_t j = 0; j < hv.size(); ++j) dot += at_t(i, j) * hv[j];
            if (!dot.is_zero()) return false;
        }
    }
    return true;
}

// Number of deletions of `top` that contain `k` and carry exactly l more
// designated pairs than it.  Equals C(drop(k), l) by the deletion lattice.
inline int gamma_meet_count(const IndexSet& top, const IndexSet& k, int l, int n) {
    int cnt = 0;
    for (const IndexSet& j : gamma_minus(top, n))
        if (static_cast<int>(j.size()) == static_cast<int>(k.size()) + 2 * l && is_subset(k, j))
            ++cnt;
    return cnt;
}

}  // namespace isogeo
