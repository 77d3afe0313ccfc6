#pragma once

#include <stdexcept>
#include <vector>

#include "fp.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "rational.hpp"

namespace isogeo {

// Image of an exact rational in GF(p); denominators coprime to p required.
inline Fp lift_scalar(const GFp& field, const Rational& x) {
    const mpq_class& q = x.raw();
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    uint32_t p = field.modulus();
    unsigned long np = mpz_fdiv_ui(num.get_mpz_t(), p);
    unsigned long dp = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (dp == 0) throw std::domain_error("lift_scalar: denominator divisible by the modulus");
    return Fp(np, p) / Fp(dp, p);
}

inline Rational lift_scalar(const QQ&, const Rational& x) { return x; }

// Evaluate a rational-coefficient polynomial at a point of another field.
template <typename K>
typename K::Elem poly_eval(const MultiPoly<Rational>& poly,
                           const std::vector<typename K::Elem>& x, const K& field) {
    using F = typename K::Elem;
    F acc = field.zero();
    for (const auto& [m, c] : poly.terms()) {
        F t = lift_scalar(field, c);
        for (size_t k = 0; k < m.size(); ++k)
            for (uint8_t e = 0; e < m[k]; ++e) t *= x[k];
        acc += t;
    }
    return acc;
}

// Termwise coefficient reduction of a whole polynomial.
template <typename K>
MultiPoly<typename K::Elem> poly_lift(const MultiPoly<Rational>& poly, const K& field) {
    MultiPoly<typename K::Elem> out =
        MultiPoly<typename K::Elem>::constant(field.zero(), poly.nvars());
    for (const auto& [m, c] : poly.terms()) out.add_term(m, lift_scalar(field, c));
    return out;
}

template <typename K>
Matrix<typename K::Elem> matrix_lift(const Matrix<Rational>& m, const K& field) {
    Matrix<typename K::Elem> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = lift_scalar(field, m(i, j));
    return out;
}

}  // namespace isogeo
