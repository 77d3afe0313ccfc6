#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace isogeo {

// Exponent vector; entry k is the exponent of variable k.
using Monomial = std::vector<uint8_t>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (uint8_t e : m) d += e;
    return d;
}

// Sparse multivariate polynomial over a commutative ring R, stored as a
// lex-ordered exponent-to-coefficient map with no zero coefficients.
// Constants have arity 0 and coerce against any arity.
template <typename R>
class MultiPoly {
public:
    MultiPoly() : nvars_(0) {}

    static MultiPoly constant(const R& c, size_t nvars = 0) {
        MultiPoly p;
        p.nvars_ = nvars;
        if (!c.is_zero()) p.t_[Monomial(nvars, 0)] = c;
        return p;
    }

    static MultiPoly variable(size_t i, size_t nvars, const R& one) {
        assert(i < nvars);
        MultiPoly p;
        p.nvars_ = nvars;
        Monomial m(nvars, 0);
        m[i] = 1;
        p.t_[m] = one;
        return p;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    size_t num_terms() const { return t_.size(); }
    const std::map<Monomial, R>& terms() const { return t_; }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, monomial_degree(m));
        return d;
    }

    void add_term(Monomial m, const R& c) {
        if (m.size() < nvars_) {
            m.resize(nvars_, 0);
        } else if (m.size() > nvars_) {
            grow_arity(m.size());
        }
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = arity_max(o);
        for (const auto& [m, c] : t_) r.add_term(r.pad(m), c);
        for (const auto& [m, c] : o.t_) r.add_term(r.pad(m), c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r = arity_max(o);
        for (const auto& [m1, c1] : t_)
            for (const auto& [m2, c2] : o.t_) {
                Monomial m = r.pad(m1);
                Monomial mm = r.pad(m2);
                for (size_t k = 0; k < m.size(); ++k) m[k] += mm[k];
                r.add_term(m, c1 * c2);
            }
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scale(const R& x) const {
        MultiPoly r;
        r.nvars_ = nvars_;
        if (x.is_zero()) return r;
        for (const auto& [m, c] : t_) {
            R cc = c * x;
            if (!cc.is_zero()) r.t_[m] = cc;
        }
        return r;
    }

    MultiPoly derivative(size_t var) const {
        MultiPoly r;
        r.nvars_ = nvars_;
        for (const auto& [m, c] : t_) {
            if (var >= m.size() || m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            R cc = c;
            for (uint8_t k = 1; k < m[var]; ++k) cc += c;  // multiply by exponent
            r.add_term(d, cc);
        }
        return r;
    }

    R coeff_of(const Monomial& m) const {
        Monomial key = m;
        while (key.size() > nvars_) {
            if (key.back() != 0) return R{};
            key.pop_back();
        }
        key.resize(nvars_, 0);
        auto it = t_.find(key);
        return it == t_.end() ? R{} : it->second;
    }

    R eval(const std::vector<R>& x) const {
        assert(x.size() >= nvars_);
        R acc{};
        for (const auto& [m, c] : t_) {
            R term = c;
            for (size_t k = 0; k < m.size(); ++k)
                for (uint8_t e = 0; e < m[k]; ++e) term *= x[k];
            acc += term;
        }
        return acc;
    }

    // f(x + offset) over a target ring R2; lift embeds coefficients.
    template <typename R2, typename Lift>
    MultiPoly<R2> shifted(const std::vector<R2>& offset, Lift lift) const {
        assert(offset.size() >= nvars_);
        MultiPoly<R2> out;
        MultiPoly<R2> zero_arity = MultiPoly<R2>::constant(R2{}, nvars_);
        out = zero_arity;
        for (const auto& [m, c] : t_) {
            // expand ∏ (x_k + offset_k)^{e_k} term by term
            std::vector<std::pair<Monomial, R2>> acc;
            acc.push_back({Monomial(nvars_, 0), lift(c)});
            for (size_t k = 0; k < m.size(); ++k) {
                for (uint8_t e = 0; e < m[k]; ++e) {
                    std::vector<std::pair<Monomial, R2>> next;
                    for (const auto& [mm, cc] : acc) {
                        Monomial mx = mm;
                        mx[k] += 1;
                        next.push_back({mx, cc});
                        if (!offset[k].is_zero()) next.push_back({mm, cc * offset[k]});
                    }
                    acc = std::move(next);
                }
            }
            for (const auto& [mm, cc] : acc) out.add_term(mm, cc);
        }
        return out;
    }

    bool operator==(const MultiPoly& o) const {
        if (t_.size() != o.t_.size()) return false;
        auto it1 = t_.begin();
        auto it2 = o.t_.begin();
        for (; it1 != t_.end(); ++it1, ++it2) {
            size_t arity = std::max(nvars_, o.nvars_);
            Monomial a = it1->first, b = it2->first;
            a.resize(arity, 0);
            b.resize(arity, 0);
            if (a != b || !(it1->second == it2->second)) return false;
        }
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::string str(const std::string& prefix = "x") const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : t_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            for (size_t k = 0; k < m.size(); ++k) {
                if (m[k] == 0) continue;
                s += "*" + prefix + std::to_string(k);
                if (m[k] > 1) s += "^" + std::to_string(m[k]);
            }
        }
        return s;
    }

private:
    MultiPoly arity_max(const MultiPoly& o) const {
        MultiPoly r;
        r.nvars_ = std::max(nvars_, o.nvars_);
        return r;
    }

    Monomial pad(const Monomial& m) const {
        if (m.size() == nvars_) return m;
        Monomial r = m;
        r.resize(nvars_, 0);
        return r;
    }

    void grow_arity(size_t nv) {
        std::map<Monomial, R> grown;
        for (auto& [m, c] : t_) {
            Monomial mm = m;
            mm.resize(nv, 0);
            grown[mm] = c;
        }
        t_ = std::move(grown);
        nvars_ = nv;
    }

    size_t nvars_;
    std::map<Monomial, R> t_;
};

// Determinant by cofactor expansion along the first row; fine for the
// small symbolic minors that arise here.
template <typename R>
R poly_det(const std::vector<std::vector<R>>& a) {
    size_t n = a.size();
    if (n == 0) return R{};
    if (n == 1) return a[0][0];
    R acc{};
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<R>> sub(n - 1, std::vector<R>(n - 1));
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub[i - 1][cc++] = a[i][c];
            }
        }
        R term = a[0][j] * poly_det(sub);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

}  // namespace isogeo
