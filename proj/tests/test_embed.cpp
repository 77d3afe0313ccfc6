#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <vector>

#include "isogeo/embed.hpp"
#include "isogeo/fp.hpp"
#include "isogeo/rng.hpp"
#include "isogeo/serialize.hpp"

using namespace isogeo;

namespace {

using P = MultiPoly<Rational>;

// Stripped minor of the shaped chart block for the label J.
P label_minor(const Matrix<P>& am, const IndexSet& j, int n, int nv) {
    IndexSet rows, cols;
    minor_rows_cols(j, n, rows, cols);
    return minor_poly(am, rows, cols, nv);
}

}  // namespace

// ---------------------------------------------------------------------------
// Frozen oracles
// ---------------------------------------------------------------------------

TEST_CASE("chart_entry: frozen layouts for n=2") {
    // general, row-major
    REQUIRE(chart_entry(ChartShape::GENERAL, 2, 1, 1).var == 0);
    REQUIRE(chart_entry(ChartShape::GENERAL, 2, 2, 1).var == 2);
    // symmetric upper triangle
    REQUIRE(chart_entry(ChartShape::SYMMETRIC, 2, 1, 2).var == 1);
    REQUIRE(chart_entry(ChartShape::SYMMETRIC, 2, 2, 2).var == 2);
    REQUIRE(chart_entry(ChartShape::SYMMETRIC, 2, 2, 1).var == 1);  // reflected
    // skew strict upper triangle, reflection flips the sign
    REQUIRE(chart_entry(ChartShape::SKEW, 2, 1, 2).var == 0);
    REQUIRE(chart_entry(ChartShape::SKEW, 2, 1, 2).sign == 1);
    REQUIRE(chart_entry(ChartShape::SKEW, 2, 2, 1).sign == -1);
    REQUIRE(chart_entry(ChartShape::SKEW, 2, 1, 1).sign == 0);
    REQUIRE(chart_var_names(ChartShape::SKEW, 3)[1] == "a[1,3]");
}

TEST_CASE("chart_entry is a bijection onto the variable range") {
    for (ChartShape shape :
         {ChartShape::GENERAL, ChartShape::SYMMETRIC, ChartShape::SKEW}) {
        int n = 4;
        std::set<int> seen;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                VarRef r = chart_entry(shape, n, i, j);
                if (r.sign == 0) {
                    REQUIRE(shape == ChartShape::SKEW);
                    REQUIRE(i == j);
                    continue;
                }
                REQUIRE(r.var >= 0);
                REQUIRE(r.var < chart_var_count(shape, n));
                if (r.sign == 1 && (shape == ChartShape::GENERAL || i <= j))
                    REQUIRE(seen.insert(r.var).second);
                // on the symmetric charts the reflected entry names the
                // same variable
                if (shape != ChartShape::GENERAL)
                    REQUIRE(chart_entry(shape, n, j, i).var == r.var);
            }
        REQUIRE(static_cast<int>(seen.size()) == chart_var_count(shape, n));
    }
}

TEST_CASE("classical 4x4 pfaffian") {
    Matrix<P> am = chart_matrix_poly(ChartShape::SKEW, 4);
    int nv = 6;
    auto x = [&](int i) { return P::variable(i, nv, Rational(1)); };
    // a12 a34 - a13 a24 + a14 a23
    P expected = x(0) * x(5) - x(1) * x(4) + x(2) * x(3);
    REQUIRE(pfaffian(am, IndexSet{1, 2, 3, 4}) == expected);
    REQUIRE_THROWS_AS(pfaffian(am, IndexSet{1, 2, 3}), std::invalid_argument);
    REQUIRE_THROWS_AS(pfaffian(am, IndexSet{}), std::invalid_argument);
}

TEST_CASE("pfaffian derivative sign uses positions within the index set") {
    // I = {1,3,4,6}: pf = a13 a46 - a14 a36 + a16 a34, so d/d a46 = +a13,
    // a plus sign even though the raw indices 4,6 would suggest minus.
    REQUIRE(pf_deriv_sign(IndexSet{1, 3, 4, 6}, 4, 6) == 1);
    REQUIRE(pf_deriv_sign(IndexSet{1, 3, 4, 6}, 1, 3) == 1);
    REQUIRE(pf_deriv_sign(IndexSet{1, 3, 4, 6}, 1, 4) == -1);
    REQUIRE(pf_deriv_sign(IndexSet{1, 2, 3, 4}, 2, 4) == -1);

    Matrix<P> am = chart_matrix_poly(ChartShape::SKEW, 6);
    IndexSet i{1, 3, 4, 6};
    P pf = pfaffian(am, i);
    int v46 = chart_entry(ChartShape::SKEW, 6, 4, 6).var;
    REQUIRE(pf.derivative(v46) == pfaffian(am, IndexSet{1, 3}));

    // full law on n=5: d pf(A_I)/d a_kl = sign * pf(A_{I \ {k,l}})
    Matrix<P> am5 = chart_matrix_poly(ChartShape::SKEW, 5);
    int nv5 = chart_var_count(ChartShape::SKEW, 5);
    for (uint32_t m = 1; m < 32; ++m) {
        if (__builtin_popcount(m) % 2 != 0 || m == 0) continue;
        IndexSet s = set_from_mask(m);
        P pfs = pfaffian(am5, s);
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b) {
                int k = s[a], l = s[b];
                IndexSet rest = set_minus(s, IndexSet{k, l});
                P sub = rest.empty() ? P::constant(Rational(1), nv5) : pfaffian(am5, rest);
                if (pf_deriv_sign(s, k, l) < 0) sub = -sub;
                REQUIRE(pfs.derivative(chart_entry(ChartShape::SKEW, 5, k, l).var) == sub);
            }
    }
}

TEST_CASE("grass chart map: frozen n=2 coordinates") {
    PolyMap f = grass_plucker(2);
    REQUIRE(f.coords.size() == 6);
    REQUIRE(f.n_vars == 4);
    // labels ordered by (distance, lex): {1,2},{1,3},{1,4},{2,3},{2,4},{3,4}
    REQUIRE(f.coord_index[0] == IndexSet{1, 2});
    REQUIRE(f.coord_index[5] == IndexSet{3, 4});
    auto x = [&](int i) { return P::variable(i, 4, Rational(1)); };
    REQUIRE(f.coords[0] == P::constant(Rational(1), 4));
    REQUIRE(f.coords[1] == x(2));   // a21
    REQUIRE(f.coords[2] == x(3));   // a22
    REQUIRE(f.coords[3] == -x(0));  // -a11
    REQUIRE(f.coords[4] == -x(1));  // -a12
    REQUIRE(f.coords[5] == x(0) * x(3) - x(1) * x(2));

    // row-span point: coordinates of (I | A) for A = [[1,2],[3,4]]
    QQ qq;
    Matrix<Rational> a(2, 2);
    a(0, 0) = Rational(1);
    a(0, 1) = Rational(2);
    a(1, 0) = Rational(3);
    a(1, 1) = Rational(4);
    std::vector<Rational> vals =
        evaluate(f, ChartPoint<Rational>{2, ChartShape::GENERAL, a}, qq);
    std::vector<Rational> expected{Rational(1), Rational(3),  Rational(4),
                                   Rational(-1), Rational(-2), Rational(-2)};
    REQUIRE(vals == expected);
}

TEST_CASE("lg chart map: frozen n=2 coordinates and values at the identity") {
    PolyMap f = lg_plucker(2);
    REQUIRE(f.coords.size() == 5);
    // label order {1,2}; {1,3}; {1,4}; {2,3}; {3,4}
    REQUIRE(f.coord_index[1] == IndexSet{1, 3});
    REQUIRE(f.coord_index[4] == IndexSet{3, 4});
    QQ qq;
    Matrix<Rational> id = Matrix<Rational>::identity(2, qq.one());
    std::vector<Rational> vals =
        evaluate(f, chart_point(ChartShape::SYMMETRIC, id), qq);
    std::vector<Rational> expected{Rational(1), Rational(0), Rational(1), Rational(1),
                                   Rational(1)};
    REQUIRE(vals == expected);
}

TEST_CASE("spinor chart maps: frozen small cases") {
    PolyMap mn = spinor_minimal(3);
    REQUIRE(mn.coords.size() == 4);
    REQUIRE(mn.coord_index[0] == IndexSet{});
    auto x = [&](int i) { return P::variable(i, 3, Rational(1)); };
    REQUIRE(mn.coords[0] == P::constant(Rational(1), 3));
    REQUIRE(mn.coords[1] == x(0));  // a12
    REQUIRE(mn.coords[2] == x(1));  // a13
    REQUIRE(mn.coords[3] == x(2));  // a23

    PolyMap pl = spinor_plucker(2);
    REQUIRE(pl.coords.size() == 3);
    auto y = [&](int i) { return P::variable(i, 1, Rational(1)); };
    REQUIRE(pl.coords[0] == P::constant(Rational(1), 1));
    REQUIRE(pl.coords[1] == -y(0));        // orbit {1,3}|{2,4}
    REQUIRE(pl.coords[2] == y(0) * y(0));  // orbit {3,4}

    PolyMap big = spinor_minimal(4);
    auto z = [&](int i) { return P::variable(i, 6, Rational(1)); };
    REQUIRE(big.coords[7] == z(0) * z(5) - z(1) * z(4) + z(2) * z(3));
}

TEST_CASE("evaluate at the origin gives the base coordinate point") {
    QQ qq;
    for (Variety v : {Variety::GR, Variety::LG, Variety::SPIN_PL, Variety::SPIN_MIN}) {
        int n = 3;
        PolyMap f = poly_map_cached(v, n);  // also exercises the build path
        Matrix<Rational> zero(n, n);
        std::vector<Rational> vals =
            evaluate(f, ChartPoint<Rational>{n, chart_shape(v), zero}, qq);
        REQUIRE(vals[0] == Rational(1));
        for (size_t i = 1; i < vals.size(); ++i) REQUIRE(vals[i] == Rational(0));
    }
}

// ---------------------------------------------------------------------------
// Structural laws
// ---------------------------------------------------------------------------

TEST_CASE("mirror labels share one stripped minor up to the parity sign") {
    for (int n = 2; n <= 4; ++n) {
        for (ChartShape shape : {ChartShape::SYMMETRIC, ChartShape::SKEW}) {
            Matrix<P> am = chart_matrix_poly(shape, n);
            int nv = chart_var_count(shape, n);
            for (const SigmaPair& p : sigma_pairs(n)) {
                P mj = label_minor(am, p.j, n, nv);
                P mjp = label_minor(am, p.jp, n, nv);
                int sigma =
                    shape == ChartShape::SYMMETRIC ? 1 : (p.distance % 2 == 0 ? 1 : -1);
                if (sigma == 1)
                    REQUIRE(mj == mjp);
                else
                    REQUIRE(mj == -mjp);
            }
        }
    }
    // frozen witnesses: equality at even distance on the skew chart
    Matrix<P> am4 = chart_matrix_poly(ChartShape::SKEW, 4);
    IndexSet j{2, 3, 5, 6}, jp{3, 4, 5, 8};
    REQUIRE(mirror(j, 4) == jp);
    REQUIRE(label_minor(am4, j, 4, 6) == label_minor(am4, jp, 4, 6));
    REQUIRE(!label_minor(am4, j, 4, 6).is_zero());
    // ... and sign flip at odd distance for n=2
    Matrix<P> am2 = chart_matrix_poly(ChartShape::SKEW, 2);
    P m13 = label_minor(am2, IndexSet{1, 3}, 2, 1);
    P m24 = label_minor(am2, IndexSet{2, 4}, 2, 1);
    REQUIRE(m13 == -P::variable(0, 1, Rational(1)));
    REQUIRE(m24 == P::variable(0, 1, Rational(1)));
}

TEST_CASE("self-mirror labels at odd distance vanish on the skew chart") {
    for (int n = 2; n <= 5; ++n) {
        Matrix<P> am = chart_matrix_poly(ChartShape::SKEW, n);
        int nv = chart_var_count(ChartShape::SKEW, n);
        int found = 0;
        for (const SigmaPair& p : sigma_pairs(n))
            if (p.self_mirror && p.distance % 2 == 1) {
                REQUIRE(label_minor(am, p.j, n, nv).is_zero());
                ++found;
            }
        if (n >= 2) REQUIRE(found > 0);
        // and these are exactly the labels dropped from the embedding
        REQUIRE(spinor_pl_pairs(n).size() + found == sigma_pairs(n).size());
    }
}

TEST_CASE("pfaffian squares to the determinant") {
    Matrix<P> am = chart_matrix_poly(ChartShape::SKEW, 4);
    P pf = pfaffian(am, IndexSet{1, 2, 3, 4});
    REQUIRE(pf * pf == label_minor(am, IndexSet{5, 6, 7, 8}, 4, 6));

    GFp fp(2147483647);
    Rng rng = make_rng(derive_seed(kDefaultSeed, 31));
    for (int trial = 0; trial < 50; ++trial) {
        auto pt = random_chart_point(ChartShape::SKEW, 6, fp, rng);
        PfTable<Fp> pft(pt.a, fp);
        MinorTable<Fp> mt(pt.a, fp);
        uint32_t full = (1u << 6) - 1;
        REQUIRE(pft.value(full) * pft.value(full) == mt.value(full, full));
        // principal 4x4 blocks too
        REQUIRE(pft.value(0b011011u) * pft.value(0b011011u) ==
                mt.value(0b011011u, 0b011011u));
    }
}

TEST_CASE("coordinates are homogeneous of their label order") {
    for (Variety v : {Variety::GR, Variety::LG, Variety::SPIN_PL, Variety::SPIN_MIN}) {
        for (int n : {3, 4}) {
            PolyMap f = v == Variety::GR && n == 4 ? grass_plucker(4) : poly_map_cached(v, n);
            std::vector<int> ord = label_orders(v, n);
            REQUIRE(f.coords.size() == ord.size());
            for (size_t i = 0; i < f.coords.size(); ++i) {
                REQUIRE(!f.coords[i].is_zero());
                for (const auto& [m, c] : f.coords[i].terms()) {
                    REQUIRE(monomial_degree(m) == ord[i]);
                    int maxexp = 0;
                    for (uint8_t e : m) maxexp = std::max<int>(maxexp, e);
                    // chart entries are multilinear up to the shape symmetry
                    int bound = (v == Variety::GR || v == Variety::SPIN_MIN) ? 1 : 2;
                    REQUIRE(maxexp <= bound);
                }
            }
        }
    }
}

TEST_CASE("chart points validate their shape") {
    QQ qq;
    Matrix<Rational> bad(2, 2);
    bad(0, 1) = Rational(3);
    bad(1, 0) = Rational(4);
    REQUIRE_THROWS_AS(chart_point(ChartShape::SYMMETRIC, bad), std::invalid_argument);
    REQUIRE_THROWS_AS(chart_point(ChartShape::SKEW, bad), std::invalid_argument);
    bad(1, 0) = Rational(-3);
    bad(0, 0) = Rational(1);  // nonzero diagonal
    REQUIRE_THROWS_AS(chart_point(ChartShape::SKEW, bad), std::invalid_argument);

    Rng rng = make_rng(derive_seed(kDefaultSeed, 32));
    for (ChartShape s : {ChartShape::GENERAL, ChartShape::SYMMETRIC, ChartShape::SKEW}) {
        auto pt = random_chart_point(s, 4, qq, rng);
        REQUIRE_NOTHROW(chart_point(s, pt.a));
    }

    PolyMap f = lg_plucker(2);
    auto skewpt = random_chart_point(ChartShape::SKEW, 2, qq, rng);
    REQUIRE_THROWS_AS(evaluate(f, skewpt, qq), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Numeric tables against the symbolic maps
// ---------------------------------------------------------------------------

TEST_CASE("minor table matches symbolic minors") {
    GFp fp(2147483647);
    Rng rng = make_rng(derive_seed(kDefaultSeed, 33));
    int n = 5;
    Matrix<P> am = chart_matrix_poly(ChartShape::GENERAL, n);
    int nv = n * n;
    auto pt = random_chart_point(ChartShape::GENERAL, n, fp, rng);
    std::vector<Fp> x = chart_vars_of(pt);
    MinorTable<Fp> t(pt.a, fp);
    REQUIRE(t.value(0, 0) == fp.one());
    for (int trial = 0; trial < 40; ++trial) {
        uint32_t s = static_cast<uint32_t>(rng() & 31u);
        std::vector<int> cols_pool{1, 2, 3, 4, 5};
        std::shuffle(cols_pool.begin(), cols_pool.end(), rng);
        IndexSet rows = set_from_mask(s);
        IndexSet cols(cols_pool.begin(), cols_pool.begin() + rows.size());
        std::sort(cols.begin(), cols.end());
        Fp expect = poly_eval(minor_poly(am, rows, cols, nv), x, fp);
        REQUIRE(t.value(set_mask(rows), set_mask(cols)) == expect);
    }
}

TEST_CASE("pfaffian table matches the symbolic pfaffian") {
    GFp fp(2147483647);
    Rng rng = make_rng(derive_seed(kDefaultSeed, 34));
    int n = 6;
    Matrix<P> am = chart_matrix_poly(ChartShape::SKEW, n);
    auto pt = random_chart_point(ChartShape::SKEW, n, fp, rng);
    std::vector<Fp> x = chart_vars_of(pt);
    PfTable<Fp> t(pt.a, fp);
    REQUIRE(t.value(0) == fp.one());
    for (uint32_t m = 1; m < 64; ++m) {
        if (__builtin_popcount(m) % 2 != 0) continue;
        REQUIRE(t.value(m) == poly_eval(pfaffian(am, set_from_mask(m)), x, fp));
    }
}

TEST_CASE("chart_eval agrees with the symbolic map and Jacobian") {
    GFp fp(2147483647);
    QQ qq;
    Rng rng = make_rng(derive_seed(kDefaultSeed, 35));
    for (Variety v : {Variety::GR, Variety::LG, Variety::SPIN_PL, Variety::SPIN_MIN}) {
        int n = 3;
        PolyMap f = poly_map_cached(v, n);
        auto pt = random_chart_point(chart_shape(v), n, fp, rng);
        std::vector<Fp> x = chart_vars_of(pt);
        ChartEval<Fp> ce = chart_eval(v, n, pt.a, fp);
        REQUIRE(ce.value == evaluate(f, pt, fp));
        Matrix<Fp> jac = poly_map_jacobian(f, x, fp);
        REQUIRE(ce.jacobian.rows() == jac.rows());
        REQUIRE(ce.jacobian.cols() == jac.cols());
        for (size_t i = 0; i < jac.rows(); ++i)
            for (size_t j = 0; j < jac.cols(); ++j) REQUIRE(ce.jacobian(i, j) == jac(i, j));

        // same over the rationals, without the Jacobian
        auto qpt = random_chart_point(chart_shape(v), n, qq, rng);
        ChartEval<Rational> cq = chart_eval(v, n, qpt.a, qq, false);
        REQUIRE(cq.value == evaluate(f, qpt, qq));
        REQUIRE(cq.jacobian.rows() == 0);
    }
}

// ---------------------------------------------------------------------------
// Plücker lift
// ---------------------------------------------------------------------------

TEST_CASE("plucker_lift reproduces the full coordinate vector") {
    QQ qq;
    Rng rng = make_rng(derive_seed(kDefaultSeed, 36));
    for (Variety v : {Variety::LG, Variety::SPIN_PL}) {
        int n = 3;
        Matrix<Rational> lift = plucker_lift(v, n);
        PolyMap f = poly_map_cached(v, n);
        PolyMap gr = poly_map_cached(Variety::GR, n);
        REQUIRE(lift.rows() == f.coords.size());
        REQUIRE(lift.cols() == gr.coords.size());
        for (int trial = 0; trial < 5; ++trial) {
            auto pt = random_chart_point(chart_shape(v), n, qq, rng);
            std::vector<Rational> c = evaluate(f, pt, qq);
            std::vector<Rational> full =
                evaluate(gr, ChartPoint<Rational>{n, ChartShape::GENERAL, pt.a}, qq);
            for (size_t k = 0; k < full.size(); ++k) {
                Rational acc;
                for (size_t i = 0; i < c.size(); ++i) acc += c[i] * lift(i, k);
                REQUIRE(acc == full[k]);
            }
        }
    }
    // each row hits the canonical column with the block parity sign
    Matrix<Rational> lift = plucker_lift(Variety::SPIN_PL, 2);
    // orbit {1,3}|{2,4}: eps({1,3}) = +1, sigma(-1)^1 * eps({2,4}) = +1
    std::vector<IndexSet> grs = gr_index_sets(2);
    auto col = label_index_by_mask(grs);
    REQUIRE(lift(1, col.at(set_mask(IndexSet{1, 3}))) == Rational(1));
    REQUIRE(lift(1, col.at(set_mask(IndexSet{2, 4}))) == Rational(1));
    REQUIRE(lift(1, col.at(set_mask(IndexSet{1, 4}))) == Rational(0));
    REQUIRE_THROWS_AS(plucker_lift(Variety::GR, 3), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Skew inverse
// ---------------------------------------------------------------------------

TEST_CASE("skew inverse via pfaffians") {
    QQ qq;
    // frozen 2x2: [[0,a],[-a,0]]^{-1} = [[0,-1/a],[1/a,0]] with a = 5
    Matrix<Rational> a(2, 2);
    a(0, 1) = Rational(5);
    a(1, 0) = Rational(-5);
    Matrix<Rational> b = skew_inverse_via_pfaffians(a, qq);
    REQUIRE(b(0, 1) == Rational(-1, 5));
    REQUIRE(b(1, 0) == Rational(1, 5));
    REQUIRE(b(0, 0) == Rational(0));

    Rng rng = make_rng(derive_seed(kDefaultSeed, 37));
    for (int trial = 0; trial < 5; ++trial) {
        auto pt = random_chart_point(ChartShape::SKEW, 4, qq, rng);
        if (PfTable<Rational>(pt.a, qq).value(0b1111u).is_zero()) continue;
        REQUIRE(skew_inverse_via_pfaffians(pt.a, qq) == inverse(pt.a, qq));
    }
    GFp fp(2147483647);
    for (int trial = 0; trial < 5; ++trial) {
        auto pt = random_chart_point(ChartShape::SKEW, 6, fp, rng);
        if (PfTable<Fp>(pt.a, fp).value(0b111111u).is_zero()) continue;
        REQUIRE(skew_inverse_via_pfaffians(pt.a, fp) == inverse(pt.a, fp));
    }

    Matrix<Rational> odd(3, 3);
    REQUIRE_THROWS_AS(skew_inverse_via_pfaffians(odd, qq), std::invalid_argument);
    Matrix<Rational> singular(2, 2);
    REQUIRE_THROWS_AS(skew_inverse_via_pfaffians(singular, qq), std::domain_error);
}

// ---------------------------------------------------------------------------
// Veronese correspondence
// ---------------------------------------------------------------------------

TEST_CASE("plucker spinor coordinates factor through the minimal chart") {
    // frozen n=2 table: (1, -a12, a12^2) against minimal (1, a12)
    std::vector<VeroneseRow> t2 = spinor_veronese_table(2);
    REQUIRE(t2.size() == 3);
    for (const VeroneseRow& r : t2) REQUIRE(r.size() == 1);
    REQUIRE((t2[0][0].a == 0 && t2[0][0].b == 0 && t2[0][0].coeff == Rational(1)));
    REQUIRE((t2[1][0].a == 0 && t2[1][0].b == 1 && t2[1][0].coeff == Rational(-1)));
    REQUIRE((t2[2][0].a == 1 && t2[2][0].b == 1 && t2[2][0].coeff == Rational(1)));

    // n=3: single signed products, and each of the 10 products is used once
    std::vector<VeroneseRow> t3 = spinor_veronese_table(3);
    REQUIRE(t3.size() == 10);
    std::set<std::pair<int, int>> used;
    for (const VeroneseRow& r : t3) {
        REQUIRE(r.size() == 1);
        REQUIRE((r[0].coeff == Rational(1) || r[0].coeff == Rational(-1)));
        REQUIRE(used.emplace(r[0].a, r[0].b).second);
    }
    REQUIRE(used.size() == 10);
    // orbit {1,4,6}|{2,5,6} sits at index 5 and is the product min[2]*min[3]
    REQUIRE(coord_index_sets(Variety::SPIN_PL, 3)[5] == IndexSet{1, 4, 6});
    REQUIRE((t3[5][0].a == 2 && t3[5][0].b == 3 && t3[5][0].coeff == Rational(1)));

    // n=4: single products no longer suffice; orbit {1,2,5,6} carries the
    // two-term quadric a13 a24 - a14 a23
    std::vector<VeroneseRow> t4 = spinor_veronese_table(4);
    REQUIRE(t4.size() == 35);
    REQUIRE(coord_index_sets(Variety::SPIN_PL, 4)[7] == IndexSet{1, 2, 5, 6});
    REQUIRE(t4[7].size() == 2);
    bool some_multi_term = false;
    for (const VeroneseRow& r : t4) {
        REQUIRE(!r.empty());
        some_multi_term = some_multi_term || r.size() > 1;
    }
    REQUIRE(some_multi_term);

    // symbolic and numeric consistency of the full rewrite, n=4
    PolyMap pl4 = spinor_plucker(4);
    PolyMap mn4 = spinor_minimal(4);
    for (size_t i = 0; i < t4.size(); ++i) {
        P acc = P::constant(Rational(0), pl4.n_vars);
        for (const VeroneseTerm& t : t4[i])
            acc += (mn4.coords[t.a] * mn4.coords[t.b]).scale(t.coeff);
        REQUIRE(acc == pl4.coords[i]);
    }
    QQ qq;
    Rng rng = make_rng(derive_seed(kDefaultSeed, 38));
    for (int n : {4, 5}) {
        std::vector<VeroneseRow> tab = n == 4 ? t4 : spinor_veronese_table(5);
        auto pt = random_chart_point(ChartShape::SKEW, n, qq, rng);
        std::vector<Rational> plv = chart_eval(Variety::SPIN_PL, n, pt.a, qq, false).value;
        std::vector<Rational> mnv = chart_eval(Variety::SPIN_MIN, n, pt.a, qq, false).value;
        for (size_t i = 0; i < tab.size(); ++i) {
            Rational acc;
            for (const VeroneseTerm& t : tab[i]) acc += t.coeff * mnv[t.a] * mnv[t.b];
            REQUIRE(acc == plv[i]);
        }
    }
}

TEST_CASE("minimal spinor chart for n=4 satisfies the defining quadric") {
    PolyMap f = spinor_minimal(4);
    // gamma order: {}, {1,2}, {1,3}, {1,4}, {2,3}, {2,4}, {3,4}, {1,2,3,4}
    P q = f.coords[0] * f.coords[7] - f.coords[1] * f.coords[6] +
          f.coords[2] * f.coords[5] - f.coords[3] * f.coords[4];
    REQUIRE(q.is_zero());
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

TEST_CASE("poly maps survive the JSON round trip") {
    for (Variety v : {Variety::GR, Variety::LG, Variety::SPIN_PL, Variety::SPIN_MIN}) {
        int n = v == Variety::GR ? 2 : 3;
        PolyMap f = v == Variety::GR          ? grass_plucker(n)
                    : v == Variety::LG        ? lg_plucker(n)
                    : v == Variety::SPIN_PL   ? spinor_plucker(n)
                                              : spinor_minimal(n);
        PolyMap g = poly_map_from_json(poly_map_to_json(f));
        REQUIRE(g.variety == f.variety);
        REQUIRE(g.n == f.n);
        REQUIRE(g.n_vars == f.n_vars);
        REQUIRE(g.coord_index == f.coord_index);
        REQUIRE(g.labels == f.labels);
        REQUIRE(g.coords.size() == f.coords.size());
        for (size_t i = 0; i < f.coords.size(); ++i) REQUIRE(g.coords[i] == f.coords[i]);
    }
    nlohmann::json bad = poly_map_to_json(lg_plucker(2));
    bad["schema"] = "isogeo/0";
    REQUIRE_THROWS_AS(poly_map_from_json(bad), std::invalid_argument);
}

TEST_CASE("poly map cache writes and reloads") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "isogeo-test-cache";
    fs::remove_all(dir);
    setenv("ISOGEO_CACHE_DIR", dir.string().c_str(), 1);
    PolyMap f = poly_map_cached(Variety::LG, 3);
    REQUIRE(fs::exists(dir / "polymap-lg-3.json"));
    PolyMap g = poly_map_cached(Variety::LG, 3);  // served from disk
    REQUIRE(g.coord_index == f.coord_index);
    for (size_t i = 0; i < f.coords.size(); ++i) REQUIRE(g.coords[i] == f.coords[i]);
    unsetenv("ISOGEO_CACHE_DIR");
    fs::remove_all(dir);
}
