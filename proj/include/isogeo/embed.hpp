#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "convert.hpp"
#include "indexset.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "rational.hpp"
#include "variety.hpp"

namespace isogeo {

// ---------------------------------------------------------------------------
// Chart variables
// ---------------------------------------------------------------------------

// Entry (i,j) of the chart block equals sign * x_var; sign 0 marks entries
// pinned to zero (the skew diagonal).
struct VarRef {
    int var = -1;
    int sign = 0;
};

// Variable layout: row-major over the independent entries (full block,
// upper triangle incl. diagonal, or strict upper triangle).  1-based i, j.
inline VarRef chart_entry(ChartShape shape, int n, int i, int j) {
    assert(1 <= i && i <= n && 1 <= j && j <= n);
    switch (shape) {
        case ChartShape::GENERAL:
            return {(i - 1) * n + (j - 1), 1};
        case ChartShape::SYMMETRIC: {
            if (i > j) std::swap(i, j);
            int off = (i - 1) * (n + 1) - i * (i - 1) / 2;
            return {off + (j - i), 1};
        }
        case ChartShape::SKEW: {
            if (i == j) return {-1, 0};
            int s = 1;
            if (i > j) {
                std::swap(i, j);
                s = -1;
            }
            int off = (i - 1) * n - i * (i - 1) / 2;
            return {off + (j - i - 1), s};
        }
    }
    return {};
}

inline std::vector<std::string> chart_var_names(ChartShape shape, int n) {
    std::vector<std::string> names(chart_var_count(shape, n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            VarRef r = chart_entry(shape, n, i, j);
            if (r.sign == 1)
                names[r.var] = "a[" + std::to_string(i) + "," + std::to_string(j) + "]";
        }
    return names;
}

// ---------------------------------------------------------------------------
// Chart points
// ---------------------------------------------------------------------------

template <typename F>
struct ChartPoint {
    int n = 0;
    ChartShape shape = ChartShape::GENERAL;
    Matrix<F> a;
};

// Validating constructor: the block must honour the shape exactly.
template <typename F>
ChartPoint<F> chart_point(ChartShape shape, Matrix<F> a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("chart_point: block must be square");
    int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (shape == ChartShape::SYMMETRIC && !(a(i, j) == a(j, i)))
                throw std::invalid_argument("chart_point: block not symmetric");
            if (shape == ChartShape::SKEW && !(a(i, j) == -a(j, i)))
                throw std::invalid_argument("chart_point: block not skew");
        }
    return ChartPoint<F>{n, shape, std::move(a)};
}

// Reads the independent entries out in variable order.
template <typename F>
std::vector<F> chart_vars_of(const ChartPoint<F>& p) {
    std::vector<F> x(chart_var_count(p.shape, p.n));
    for (int i = 1; i <= p.n; ++i)
        for (int j = 1; j <= p.n; ++j) {
            VarRef r = chart_entry(p.shape, p.n, i, j);
            if (r.sign == 1) x[r.var] = p.a(i - 1, j - 1);
        }
    return x;
}

template <typename K, typename Rng>
ChartPoint<typename K::Elem> random_chart_point(ChartShape shape, int n, const K& field,
                                                Rng& rng) {
    using F = typename K::Elem;
    Matrix<F> a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = field.zero();
    switch (shape) {
        case ChartShape::GENERAL:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = field.random(rng);
            break;
        case ChartShape::SYMMETRIC:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a(i, j) = a(j, i) = field.random(rng);
            break;
        case ChartShape::SKEW:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    a(i, j) = field.random(rng);
                    a(j, i) = -a(i, j);
                }
            break;
    }
    return ChartPoint<F>{n, shape, std::move(a)};
}

// The generic chart block with polynomial entries.
inline Matrix<MultiPoly<Rational>> chart_matrix_poly(ChartShape shape, int n) {
    using P = MultiPoly<Rational>;
    int nv = chart_var_count(shape, n);
    Matrix<P> a(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            VarRef r = chart_entry(shape, n, i, j);
            if (r.sign == 0) {
                a(i - 1, j - 1) = P::constant(Rational(0), nv);
            } else {
                P v = P::variable(r.var, nv, Rational(1));
                a(i - 1, j - 1) = r.sign == 1 ? v : -v;
            }
        }
    return a;
}

// ---------------------------------------------------------------------------
// Pfaffians
// ---------------------------------------------------------------------------

namespace detail {

// pf of the principal block on `mask` (even popcount >= 2) by expansion
// along the smallest index; memoized across calls sharing the map.
template <typename R>
R pf_expand(const Matrix<R>& a, uint32_t mask, std::unordered_map<uint32_t, R>& memo) {
    int i1 = __builtin_ctz(mask) + 1;
    uint32_t rest = mask & ~(1u << (i1 - 1));
    if (__builtin_popcount(mask) == 2) {
        int j = __builtin_ctz(rest) + 1;
        return a(i1 - 1, j - 1);
    }
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    R acc{};
    int pos = 0;
    for (uint32_t r = rest; r != 0; r &= r - 1) {
        int j = __builtin_ctz(r) + 1;
        R term = a(i1 - 1, j - 1) * pf_expand(a, mask & ~(1u << (i1 - 1)) & ~(1u << (j - 1)), memo);
        if (pos % 2 == 0)
            acc += term;
        else
            acc -= term;
        ++pos;
    }
    return memo.emplace(mask, std::move(acc)).first->second;
}

}  // namespace detail

// Pfaffian of the principal block of a skew matrix indexed by a nonempty
// even set; works over any commutative ring.
template <typename R>
R pfaffian(const Matrix<R>& a, const IndexSet& i) {
    if (i.empty() || i.size() % 2 != 0)
        throw std::invalid_argument("pfaffian: index set must be nonempty of even size");
    assert(i.back() <= static_cast<int>(a.rows()));
    std::unordered_map<uint32_t, R> memo;
    return detail::pf_expand(a, set_mask(i), memo);
}

// d pf(A_I) / d a_{kl} = sign * pf(A_{I minus {k,l}}), with the sign taken
// from the positions of k and l inside I (not their absolute values).
inline int pf_deriv_sign(const IndexSet& i, int k, int l) {
    auto pos = [&](int x) {
        return static_cast<int>(std::lower_bound(i.begin(), i.end(), x) - i.begin()) + 1;
    };
    return (pos(k) + pos(l) + 1) % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Symbolic minors and the polynomial maps
// ---------------------------------------------------------------------------

// det of the rows x cols submatrix of a polynomial matrix; the empty minor
// is the constant 1 (in nv variables).
inline MultiPoly<Rational> minor_poly(const Matrix<MultiPoly<Rational>>& a, const IndexSet& rows,
                                      const IndexSet& cols, int nv) {
    assert(rows.size() == cols.size());
    if (rows.empty()) return MultiPoly<Rational>::constant(Rational(1), nv);
    std::vector<std::vector<MultiPoly<Rational>>> sub(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        sub[i].resize(cols.size());
        for (size_t j = 0; j < cols.size(); ++j) sub[i][j] = a(rows[i] - 1, cols[j] - 1);
    }
    return poly_det(sub);
}

struct PolyMap {
    Variety variety = Variety::GR;
    int n = 0;
    int n_vars = 0;
    std::vector<MultiPoly<Rational>> coords;
    std::vector<IndexSet> coord_index;  // canonical label per coordinate
    std::vector<std::string> labels;    // printable form of the same
};

// Full middle Grassmannian chart: coordinate at J is det(M_J) for
// M = (I_n | A), A a general block.  The block-reorder sign makes each
// coordinate the product of eps(J) and the stripped minor.
inline PolyMap grass_plucker(int n) {
    if (n < 1) throw std::invalid_argument("grass_plucker: n >= 1");
    PolyMap f;
    f.variety = Variety::GR;
    f.n = n;
    f.n_vars = chart_var_count(ChartShape::GENERAL, n);
    Matrix<MultiPoly<Rational>> am = chart_matrix_poly(ChartShape::GENERAL, n);
    f.coord_index = gr_index_sets(n);
    f.labels = label_names(Variety::GR, n);
    for (const IndexSet& j : f.coord_index) {
        IndexSet rows, cols;
        minor_rows_cols(j, n, rows, cols);
        MultiPoly<Rational> c = minor_poly(am, rows, cols, f.n_vars);
        if (perm_sign(j, n) < 0) c = -c;
        f.coords.push_back(std::move(c));
    }
    return f;
}

// Symmetric chart: one intrinsic coordinate per mirror orbit, equal to the
// stripped minor of the canonical representative (the eps sign is already
// absorbed: eps(J) det(M_J) = det of the stripped minor).
inline PolyMap lg_plucker(int n) {
    if (n < 1) throw std::invalid_argument("lg_plucker: n >= 1");
    PolyMap f;
    f.variety = Variety::LG;
    f.n = n;
    f.n_vars = chart_var_count(ChartShape::SYMMETRIC, n);
    Matrix<MultiPoly<Rational>> am = chart_matrix_poly(ChartShape::SYMMETRIC, n);
    f.coord_index = coord_index_sets(Variety::LG, n);
    f.labels = label_names(Variety::LG, n);
    for (const IndexSet& j : f.coord_index) {
        IndexSet rows, cols;
        minor_rows_cols(j, n, rows, cols);
        f.coords.push_back(minor_poly(am, rows, cols, f.n_vars));
    }
    return f;
}

// Skew chart, Plücker-style: as lg_plucker but identically-zero orbits
// (self-mirror at odd distance) are dropped.
inline PolyMap spinor_plucker(int n) {
    if (n < 1) throw std::invalid_argument("spinor_plucker: n >= 1");
    PolyMap f;
    f.variety = Variety::SPIN_PL;
    f.n = n;
    f.n_vars = chart_var_count(ChartShape::SKEW, n);
    Matrix<MultiPoly<Rational>> am = chart_matrix_poly(ChartShape::SKEW, n);
    f.coord_index = coord_index_sets(Variety::SPIN_PL, n);
    f.labels = label_names(Variety::SPIN_PL, n);
    for (const IndexSet& j : f.coord_index) {
        IndexSet rows, cols;
        minor_rows_cols(j, n, rows, cols);
        f.coords.push_back(minor_poly(am, rows, cols, f.n_vars));
    }
    return f;
}

// Skew chart, minimal embedding: principal Pfaffians over even index sets,
// with the empty set contributing the constant 1.
inline PolyMap spinor_minimal(int n) {
    if (n < 2) throw std::invalid_argument("spinor_minimal: n >= 2");
    PolyMap f;
    f.variety = Variety::SPIN_MIN;
    f.n = n;
    f.n_vars = chart_var_count(ChartShape::SKEW, n);
    Matrix<MultiPoly<Rational>> am = chart_matrix_poly(ChartShape::SKEW, n);
    f.coord_index = coord_index_sets(Variety::SPIN_MIN, n);
    f.labels = label_names(Variety::SPIN_MIN, n);
    std::unordered_map<uint32_t, MultiPoly<Rational>> memo;
    for (const IndexSet& i : f.coord_index) {
        if (i.empty())
            f.coords.push_back(MultiPoly<Rational>::constant(Rational(1), f.n_vars));
        else
            f.coords.push_back(detail::pf_expand(am, set_mask(i), memo));
    }
    return f;
}

// Chart map of any of the four varieties, by tag.
inline PolyMap poly_map_for(Variety v, int n) {
    switch (v) {
        case Variety::GR: return grass_plucker(n);
        case Variety::LG: return lg_plucker(n);
        case Variety::SPIN_PL: return spinor_plucker(n);
        case Variety::SPIN_MIN: return spinor_minimal(n);
    }
    throw std::invalid_argument("poly_map_for: unknown variety");
}

// Coordinate vector of the map at a chart point, lifting the exact
// rational coefficients into the point's field.
template <typename F, typename K>
std::vector<F> evaluate(const PolyMap& f, const ChartPoint<F>& p, const K& field) {
    if (chart_shape(f.variety) != p.shape || f.n != p.n)
        throw std::invalid_argument("evaluate: chart point does not match the map");
    std::vector<F> x = chart_vars_of(p);
    std::vector<F> out(f.coords.size(), field.zero());
    for (size_t i = 0; i < f.coords.size(); ++i) out[i] = poly_eval(f.coords[i], x, field);
    return out;
}

// Jacobian of the map at a variable assignment (symbolic derivatives,
// evaluated exactly); rows = coordinates, columns = chart variables.
template <typename K>
Matrix<typename K::Elem> poly_map_jacobian(const PolyMap& f,
                                           const std::vector<typename K::Elem>& x,
                                           const K& field) {
    Matrix<typename K::Elem> jac(f.coords.size(), f.n_vars);
    for (size_t i = 0; i < f.coords.size(); ++i)
        for (int v = 0; v < f.n_vars; ++v)
            jac(i, v) = poly_eval(f.coords[i].derivative(v), x, field);
    return jac;
}

// ---------------------------------------------------------------------------
// Numeric tables: all minors / Pfaffians of one chart block at once
// ---------------------------------------------------------------------------

// det(a[S,T]) for every pair of equal-size subsets, built bottom-up by
// expansion along the smallest row; O(1) lookups by mask pair.
template <typename F>
class MinorTable {
public:
    template <typename K>
    MinorTable(const Matrix<F>& a, const K& field) : n_(static_cast<int>(a.rows())) {
        assert(a.rows() == a.cols() && n_ <= 10);
        v_.assign(size_t(1) << (2 * n_), F{});
        v_[0] = field.one();
        uint32_t full = (1u << n_) - 1;
        for (uint32_t s = 1; s <= full; ++s) {
            int d = __builtin_popcount(s);
            int i1 = __builtin_ctz(s) + 1;
            uint32_t srest = s & ~(1u << (i1 - 1));
            for (uint32_t t = 1; t <= full; ++t) {
                if (__builtin_popcount(t) != d) continue;
                F acc = field.zero();
                int pos = 0;
                for (uint32_t r = t; r != 0; r &= r - 1) {
                    int j = __builtin_ctz(r) + 1;
                    F term = a(i1 - 1, j - 1) * v_[key(srest, t & ~(1u << (j - 1)))];
                    if (pos % 2 == 0)
                        acc += term;
                    else
                        acc -= term;
                    ++pos;
                }
                v_[key(s, t)] = std::move(acc);
            }
        }
    }

    const F& value(uint32_t rows, uint32_t cols) const { return v_[key(rows, cols)]; }

private:
    size_t key(uint32_t s, uint32_t t) const { return (size_t(s) << n_) | t; }

    int n_;
    std::vector<F> v_;
};

// pf(a_I) for every even subset, same bottom-up scheme; a must be skew.
template <typename F>
class PfTable {
public:
    template <typename K>
    PfTable(const Matrix<F>& a, const K& field) : v_(size_t(1) << a.rows()) {
        assert(a.rows() == a.cols() && a.rows() <= 20);
        v_[0] = field.one();
        for (uint32_t m = 1; m < v_.size(); ++m) {
            if (__builtin_popcount(m) % 2 != 0) continue;
            int i1 = __builtin_ctz(m) + 1;
            uint32_t rest = m & ~(1u << (i1 - 1));
            F acc = field.zero();
            int pos = 0;
            for (uint32_t r = rest; r != 0; r &= r - 1) {
                int j = __builtin_ctz(r) + 1;
                F term = a(i1 - 1, j - 1) * v_[rest & ~(1u << (j - 1))];
                if (pos % 2 == 0)
                    acc += term;
                else
                    acc -= term;
                ++pos;
            }
            v_[m] = std::move(acc);
        }
    }

    const F& value(uint32_t mask) const { return v_[mask]; }

private:
    std::vector<F> v_;
};

// ---------------------------------------------------------------------------
// Fast per-point evaluation of a whole chart map
// ---------------------------------------------------------------------------

struct CoordDescriptor {
    IndexSet index;     // canonical label
    uint32_t rows = 0;  // stripped-minor masks (set mask twice for SPIN_MIN)
    uint32_t cols = 0;
    int sign = 1;       // eps(J) for genuine Plücker coordinates, +1 otherwise
    int order = 0;      // jet order of first appearance
};

inline std::vector<CoordDescriptor> coord_descriptors(Variety v, int n) {
    std::vector<CoordDescriptor> out;
    if (v == Variety::SPIN_MIN) {
        for (const IndexSet& i : spinor_min_sets(n)) {
            CoordDescriptor d;
            d.index = i;
            d.rows = d.cols = set_mask(i);
            d.order = static_cast<int>(i.size()) / 2;
            out.push_back(std::move(d));
        }
        return out;
    }
    for (const IndexSet& j : coord_index_sets(v, n)) {
        CoordDescriptor d;
        d.index = j;
        IndexSet rows, cols;
        minor_rows_cols(j, n, rows, cols);
        d.rows = set_mask(rows);
        d.cols = set_mask(cols);
        d.sign = v == Variety::GR ? perm_sign(j, n) : 1;
        d.order = static_cast<int>(rows.size());
        out.push_back(std::move(d));
    }
    return out;
}

template <typename F>
struct ChartEval {
    std::vector<F> value;
    Matrix<F> jacobian;  // coordinates x chart variables; empty if not requested
};

// Exact coordinate vector and Jacobian of the chart map of `v` at the
// block `a`, via the minor/Pfaffian tables (no symbolic polynomials).
// Agrees with evaluate()/poly_map_jacobian() on the same point.
template <typename F, typename K>
ChartEval<F> chart_eval(Variety v, int n, const Matrix<F>& a, const K& field,
                        bool with_jacobian = true) {
    const std::vector<CoordDescriptor> descs = coord_descriptors(v, n);
    const int nv = chart_var_count(v, n);
    ChartEval<F> out;
    out.value.assign(descs.size(), field.zero());
    if (with_jacobian) out.jacobian = Matrix<F>(descs.size(), nv);

    if (v == Variety::SPIN_MIN) {
        PfTable<F> t(a, field);
        for (size_t i = 0; i < descs.size(); ++i) {
            const IndexSet& s = descs[i].index;
            out.value[i] = t.value(descs[i].rows);
            if (!with_jacobian) continue;
            for (size_t x = 0; x < s.size(); ++x)
                for (size_t y = x + 1; y < s.size(); ++y) {
                    int k = s[x], l = s[y];
                    VarRef vr = chart_entry(ChartShape::SKEW, n, k, l);
                    F g = t.value(descs[i].rows & ~(1u << (k - 1)) & ~(1u << (l - 1)));
                    if (pf_deriv_sign(s, k, l) > 0)
                        out.jacobian(i, vr.var) += g;
                    else
                        out.jacobian(i, vr.var) -= g;
                }
        }
        return out;
    }

    MinorTable<F> t(a, field);
    ChartShape shape = chart_shape(v);
    for (size_t i = 0; i < descs.size(); ++i) {
        const CoordDescriptor& d = descs[i];
        out.value[i] = d.sign > 0 ? t.value(d.rows, d.cols) : -t.value(d.rows, d.cols);
        if (!with_jacobian) continue;
        IndexSet rset = set_from_mask(d.rows), cset = set_from_mask(d.cols);
        for (size_t pr = 0; pr < rset.size(); ++pr)
            for (size_t pc = 0; pc < cset.size(); ++pc) {
                VarRef vr = chart_entry(shape, n, rset[pr], cset[pc]);
                if (vr.sign == 0) continue;
                F g = t.value(d.rows & ~(1u << (rset[pr] - 1)),
                              d.cols & ~(1u << (cset[pc] - 1)));
                int sg = d.sign * vr.sign * ((pr + pc) % 2 == 0 ? 1 : -1);
                if (sg > 0)
                    out.jacobian(i, vr.var) += g;
                else
                    out.jacobian(i, vr.var) -= g;
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lift from intrinsic pair coordinates to the full Plücker space
// ---------------------------------------------------------------------------

// Row per intrinsic coordinate, columns aligned with gr_index_sets(n).
// P_J = eps(J) c on the canonical member; the mirror member picks up the
// extra sign sigma = +1 on the symmetric chart and (-1)^distance on the
// skew chart (verified symbolically in the test suite).
inline Matrix<Rational> plucker_lift(Variety v, int n) {
    if (v != Variety::LG && v != Variety::SPIN_PL)
        throw std::invalid_argument("plucker_lift: defined for the pair-coordinate charts");
    std::vector<IndexSet> grs = gr_index_sets(n);
    std::unordered_map<uint32_t, int> col = label_index_by_mask(grs);
    std::vector<SigmaPair> pairs = v == Variety::LG ? lg_pairs(n) : spinor_pl_pairs(n);
    Matrix<Rational> m(pairs.size(), grs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        const SigmaPair& p = pairs[i];
        m(i, col.at(set_mask(p.j))) = Rational(p.eps_j);
        if (!p.self_mirror) {
            int sigma = v == Variety::LG ? 1 : (p.distance % 2 == 0 ? 1 : -1);
            m(i, col.at(set_mask(p.jp))) = Rational(sigma * p.eps_jp);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Skew inverse through Pfaffians
// ---------------------------------------------------------------------------

// A^{-1}[i][j] = (-1)^{i+j} pf(A with rows/cols i,j removed) / pf(A) for
// i < j, extended skew; checked against plain elimination in the tests.
template <typename F, typename K>
Matrix<F> skew_inverse_via_pfaffians(const Matrix<F>& a, const K& field) {
    int n = static_cast<int>(a.rows());
    if (n % 2 != 0) throw std::invalid_argument("skew_inverse_via_pfaffians: odd size");
    PfTable<F> t(a, field);
    uint32_t full = (1u << n) - 1;
    const F& pf = t.value(full);
    if (pf.is_zero()) throw std::domain_error("skew_inverse_via_pfaffians: singular block");
    F inv_pf = pf.inverse();
    Matrix<F> b(n, n);
    for (int i = 0; i < n; ++i) b(i, i) = field.zero();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            F g = t.value(full & ~(1u << (i - 1)) & ~(1u << (j - 1))) * inv_pf;
            if ((i + j) % 2 != 0) g = -g;
            b(i - 1, j - 1) = g;
            b(j - 1, i - 1) = -g;
        }
    return b;
}

// ---------------------------------------------------------------------------
// Veronese correspondence between the two skew-chart embeddings
// ---------------------------------------------------------------------------

// One term of a Plücker-style coordinate written in the degree-2 Veronese
// monomials of the minimal embedding: coeff * min[a] * min[b].
struct VeroneseTerm {
    int a = 0;
    int b = 0;
    Rational coeff;
};

using VeroneseRow = std::vector<VeroneseTerm>;

// Exact rewrite of every Plücker-style coordinate as a linear combination
// of products of two minimal-chart coordinates, discovered once by solving
// the rewrite system degree by degree.  For n <= 3 every row is a single
// signed product; from n = 4 on, genuine sums appear (the products are
// linearly dependent there, and the representative with free columns
// zeroed is taken, which makes the table deterministic).
inline std::vector<VeroneseRow> spinor_veronese_table(int n) {
    PolyMap pl = spinor_plucker(n);
    PolyMap mn = spinor_minimal(n);
    std::vector<int> mord = label_orders(Variety::SPIN_MIN, n);
    std::vector<int> pord = label_orders(Variety::SPIN_PL, n);
    std::vector<VeroneseRow> table(pl.coords.size());
    int maxd = 0;
    for (int d : pord) maxd = std::max(maxd, d);
    for (int d = 0; d <= maxd; ++d) {
        std::vector<std::pair<int, int>> cand;
        std::vector<MultiPoly<Rational>> prod;
        for (size_t a = 0; a < mn.coords.size(); ++a)
            for (size_t b = a; b < mn.coords.size(); ++b)
                if (mord[a] + mord[b] == d) {
                    cand.emplace_back(static_cast<int>(a), static_cast<int>(b));
                    prod.push_back(mn.coords[a] * mn.coords[b]);
                }
        std::vector<size_t> rhs;
        for (size_t i = 0; i < pl.coords.size(); ++i)
            if (pord[i] == d) rhs.push_back(i);
        if (rhs.empty()) continue;
        if (cand.empty())
            throw std::logic_error("spinor_veronese_table: no products of the needed degree");
        std::map<Monomial, size_t> mono;
        for (const MultiPoly<Rational>& p : prod)
            for (const auto& [m, c] : p.terms()) mono.emplace(m, 0);
        for (size_t i : rhs)
            for (const auto& [m, c] : pl.coords[i].terms()) mono.emplace(m, 0);
        size_t row = 0;
        for (auto& [m, idx] : mono) idx = row++;
        Matrix<Rational> aug(mono.size(), cand.size() + rhs.size());
        for (size_t k = 0; k < prod.size(); ++k)
            for (const auto& [m, c] : prod[k].terms()) aug(mono.at(m), k) = c;
        for (size_t j = 0; j < rhs.size(); ++j)
            for (const auto& [m, c] : pl.coords[rhs[j]].terms())
                aug(mono.at(m), cand.size() + j) = c;
        std::vector<size_t> pivots = rref_in_place(aug);
        for (size_t p : pivots)
            if (p >= cand.size())
                throw std::logic_error(
                    "spinor_veronese_table: coordinate outside the product span");
        for (size_t j = 0; j < rhs.size(); ++j) {
            VeroneseRow terms;
            for (size_t k = 0; k < pivots.size(); ++k) {
                const Rational& c = aug(k, cand.size() + j);
                if (!c.is_zero())
                    terms.push_back({cand[pivots[k]].first, cand[pivots[k]].second, c});
            }
            table[rhs[j]] = std::move(terms);
        }
    }
    return table;
}

}  // namespace isogeo
