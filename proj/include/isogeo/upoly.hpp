#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isogeo {

// Dense univariate polynomial over a ring F, normalized so the leading
// coefficient is nonzero (the zero polynomial has no coefficients).
template <typename F>
class UPoly {
public:
    UPoly() {}
    explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly constant(const F& x) {
        UPoly p;
        if (!x.is_zero()) p.c_.push_back(x);
        return p;
    }

    // c * t^k
    static UPoly monomial(const F& c, size_t k) {
        UPoly p;
        if (c.is_zero()) return p;
        p.c_.assign(k + 1, F{});
        p.c_[k] = c;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const F& coeff(size_t k) const {
        static const F zero{};
        return k < c_.size() ? c_[k] : zero;
    }

    // multiplicity of t = 0 as a root; zero polynomial reports 0
    size_t t_valuation() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return k;
        return 0;
    }

    F eval(const F& t) const {
        F r{};
        for (size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
        return r;
    }

    F at_zero() const { return coeff(0); }

    UPoly operator-() const {
        UPoly r = *this;
        for (F& x : r.c_) x = -x;
        return r;
    }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), F{});
        for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
        r.trim();
        return r;
    }

    UPoly operator-(const UPoly& o) const { return *this + (-o); }

    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly();
        UPoly r;
        r.c_.assign(c_.size() + o.c_.size() - 1, F{});
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.trim();
        return r;
    }

    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    UPoly scale(const F& x) const {
        if (x.is_zero()) return UPoly();
        UPoly r = *this;
        for (F& y : r.c_) y = y * x;
        r.trim();
        return r;
    }

    // divide by t^k; requires valuation >= k
    UPoly shift_down(size_t k) const {
        if (is_zero()) return UPoly();
        assert(t_valuation() >= k);
        UPoly r;
        r.c_.assign(c_.begin() + k, c_.end());
        return r;
    }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    // Polynomial division (field coefficients): *this = q * d + r.
    void divmod(const UPoly& d, UPoly& q, UPoly& r) const {
        if (d.is_zero()) throw std::domain_error("UPoly: division by zero");
        q = UPoly();
        r = *this;
        F lead_inv = d.c_.back().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            size_t k = r.degree() - d.degree();
            F f = r.c_.back() * lead_inv;
            q += monomial(f, k);
            r -= d.mul_shifted(f, k);
        }
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[k].str();
            if (k >= 1) s += "*" + var;
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    UPoly mul_shifted(const F& f, size_t k) const {
        UPoly r;
        r.c_.assign(c_.size() + k, F{});
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i] * f;
        r.trim();
        return r;
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<F> c_;
};

// Monic gcd over a field (Euclid); gcd(0, 0) = 0.
template <typename F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero()) {
        UPoly<F> q, r;
        a.divmod(b, q, r);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        F lead = a.coeff(a.degree());
        a = a.scale(lead.inverse());
    }
    return a;
}

}  // namespace isogeo
