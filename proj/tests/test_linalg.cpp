#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isogeo/fp.hpp"
#include "isogeo/matrix.hpp"
#include "isogeo/rational.hpp"
#include "isogeo/subspace.hpp"

using namespace isogeo;

namespace {

template <typename K>
Matrix<typename K::Elem> random_matrix(size_t r, size_t c, const K& k,
                                       std::mt19937_64& rng) {
    Matrix<typename K::Elem> m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            m(i, j) = k.from_int(static_cast<int64_t>(rng() % 19) - 9);
    return m;
}

}  // namespace

TEST_CASE("rref produces a canonical reduced echelon form") {
    QQ qq;
    Matrix<Rational> m(3, 4);
    // column 1 is twice column 0, so the pivots land on columns 0, 2, 3
    int64_t vals[3][4] = {{2, 4, 6, 8}, {1, 2, 3, 5}, {0, 0, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = qq.from_int(vals[i][j]);
    auto piv = rref_in_place(m);
    REQUIRE(piv == std::vector<size_t>{0, 2, 3});
    // pivots are 1 with zeros above and below
    for (size_t k = 0; k < piv.size(); ++k)
        for (size_t i = 0; i < m.rows(); ++i)
            REQUIRE(m(i, piv[k]) == (i == k ? qq.one() : qq.zero()));
}

TEST_CASE("rank agrees between exact rationals and a prime field") {
    // over a random integer matrix the F_p rank can only drop, and for a
    // large prime a drop has negligible probability; equality on 50 draws
    // certifies the reduction maps are consistent
    QQ qq;
    GFp k(2147483647u);
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 50; ++iter) {
        size_t r = 2 + rng() % 5, c = 2 + rng() % 5;
        Matrix<Rational> mq(r, c);
        Matrix<Fp> mp(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) {
                int64_t v = static_cast<int64_t>(rng() % 19) - 9;
                mq(i, j) = qq.from_int(v);
                mp(i, j) = k.from_int(v);
            }
        REQUIRE(rank(mq) == rank(mp));
    }
}

TEST_CASE("incremental rref accumulator matches batch rank") {
    GFp k(1000003);
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        Matrix<Fp> m = random_matrix(8, 5, k, rng);
        RrefAccumulator<Fp> acc(5);
        for (size_t i = 0; i < m.rows(); ++i) acc.add_row(m.row(i));
        REQUIRE(acc.rank() == rank(m));
        REQUIRE(Subspace<Fp>::span(acc.to_matrix()) == Subspace<Fp>::span(m));
    }
}

TEST_CASE("left kernel annihilates and has complementary dimension") {
    QQ qq;
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 25; ++iter) {
        Matrix<Rational> m = random_matrix(5, 4, qq, rng);
        Matrix<Rational> ker = left_kernel(m, qq);
        REQUIRE(ker.rows() == m.rows() - rank(m));
        if (ker.rows() > 0) {
            Matrix<Rational> prod = ker * m;
            for (size_t i = 0; i < prod.rows(); ++i)
                for (size_t j = 0; j < prod.cols(); ++j)
                    REQUIRE(prod(i, j).is_zero());
        }
    }
}

TEST_CASE("matrix inverse round-trips") {
    QQ qq;
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 10; ++iter) {
        Matrix<Rational> m = random_matrix(4, 4, qq, rng);
        if (rank(m) < 4) continue;
        Matrix<Rational> inv = inverse(m, qq);
        REQUIRE(m * inv == Matrix<Rational>::identity(4, qq.one()));
    }
}

TEST_CASE("solve_left finds exact solutions and detects inconsistency") {
    QQ qq;
    Matrix<Rational> a(2, 3);
    int64_t av[2][3] = {{1, 2, 3}, {0, 1, 1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = qq.from_int(av[i][j]);
    std::vector<Rational> b = {qq.from_int(1), qq.from_int(3), qq.from_int(4)};
    std::vector<Rational> x;
    REQUIRE(solve_left(a, b, x, qq));
    // check x A = b
    for (size_t j = 0; j < 3; ++j) {
        Rational s;
        for (size_t i = 0; i < 2; ++i) s += x[i] * a(i, j);
        REQUIRE(s == b[j]);
    }
    std::vector<Rational> bad = {qq.from_int(1), qq.from_int(0), qq.from_int(0)};
    REQUIRE_FALSE(solve_left(a, bad, x, qq));
}

TEST_CASE("Grassmann dimension identity for join and intersection") {
    GFp k(65537);
    std::mt19937_64 rng(59);
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 6;
        auto a = Subspace<Fp>::span(random_matrix(1 + rng() % 4, n, k, rng));
        auto b = Subspace<Fp>::span(random_matrix(1 + rng() % 4, n, k, rng));
        auto j = join(a, b);
        auto m = intersect(a, b);
        REQUIRE(a.dim() + b.dim() == j.dim() + m.dim());
        REQUIRE(j.contains(a));
        REQUIRE(j.contains(b));
        REQUIRE(a.contains(m));
        REQUIRE(b.contains(m));
    }
}

TEST_CASE("intersection members belong to both spans") {
    QQ qq;
    // planes x+y+z=0-ish: span{(1,0,-1),(0,1,-1)} and span{(1,1,1),(1,0,-1)}
    Matrix<Rational> ma(2, 3), mb(2, 3);
    int64_t va[2][3] = {{1, 0, -1}, {0, 1, -1}};
    int64_t vb[2][3] = {{1, 1, 1}, {1, 0, -1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            ma(i, j) = qq.from_int(va[i][j]);
            mb(i, j) = qq.from_int(vb[i][j]);
        }
    auto a = Subspace<Rational>::span(ma);
    auto b = Subspace<Rational>::span(mb);
    auto m = intersect(a, b);
    REQUIRE(m.dim() == 1);
    REQUIRE(m.contains(std::vector<Rational>{qq.from_int(1), qq.from_int(0),
                                             qq.from_int(-1)}));
}

TEST_CASE("subspace equality is canonical-form equality") {
    QQ qq;
    Matrix<Rational> m1(2, 3), m2(2, 3);
    int64_t v1[2][3] = {{1, 1, 0}, {0, 0, 1}};
    int64_t v2[2][3] = {{2, 2, 2}, {0, 0, -5}};  // same span, different basis
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            m1(i, j) = qq.from_int(v1[i][j]);
            m2(i, j) = qq.from_int(v2[i][j]);
        }
    REQUIRE(Subspace<Rational>::span(m1) == Subspace<Rational>::span(m2));
}
