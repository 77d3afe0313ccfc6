#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace isogeo {

// Arbitrary-precision rational, kept canonical (lowest terms, positive
// denominator) by GMP.  Thin wrapper so the field interface matches Fp.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int64_t x) : v_(static_cast<long>(x)) {}
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    Rational(int64_t num, int64_t den)
        : v_(mpq_class(static_cast<long>(num)) / mpq_class(static_cast<long>(den))) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    // Accepts "p/q", plain integers, and decimal-point notation ("-0.125").
    static Rational from_decimal_string(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        Rational r;
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            r.v_ = mpq_class(s, 10);  // handles "p/q" and integer forms
        } else {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac_len = s.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+")
                throw std::invalid_argument("Rational: bad decimal literal");
            mpz_class num(digits, 10);  // base pinned: leading zeros stay decimal
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            r.v_ = mpq_class(num) / mpq_class(den);
        }
        r.v_.canonicalize();
        return r;
    }

    const mpq_class& raw() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    // "num" or "num/den", canonical form
    std::string str() const { return v_.get_str(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

private:
    mpq_class v_;
};

// Field context for the rationals.
class QQ {
public:
    using Elem = Rational;

    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(int64_t x) const { return Rational(x); }

    // Random integer in [-99, 99]: small enough to keep exact arithmetic
    // cheap, large enough to avoid accidental degeneracies.
    template <typename Rng>
    Rational random(Rng& rng) const {
        return Rational(static_cast<int64_t>(rng() % 199) - 99);
    }

    std::string descriptor() const { return "qq"; }
};

}  // namespace isogeo
