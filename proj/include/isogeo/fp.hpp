#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace isogeo {

// Prime-field element with the modulus carried per element.  A
// default-constructed element is an "unbound" zero: it has no modulus yet
// and acquires one on first contact with a bound element.  Unbound nonzero
// values never arise.  Moduli are restricted to odd primes below 2^31 so
// products fit in unsigned 64-bit arithmetic without overflow.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(uint64_t value, uint32_t p) : v_(value % p), p_(p) { assert(p >= 2); }

    static Fp from_int(int64_t x, uint32_t p) {
        int64_t r = x % static_cast<int64_t>(p);
        if (r < 0) r += static_cast<int64_t>(p);
        return Fp(static_cast<uint64_t>(r), p);
    }

    uint64_t value() const { return v_; }
    uint32_t modulus() const { return p_; }
    bool bound() const { return p_ != 0; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const {
        if (!bound() || v_ == 0) return *this;
        return Fp(p_ - v_, p_);
    }

    Fp operator+(const Fp& o) const {
        uint32_t p = join_modulus(o);
        if (p == 0) return Fp();
        uint64_t s = v_ + o.v_;
        if (s >= p) s -= p;
        return Fp(s, p);
    }

    Fp operator-(const Fp& o) const { return *this + (-o); }

    Fp operator*(const Fp& o) const {
        uint32_t p = join_modulus(o);
        if (p == 0) return Fp();
        return Fp((v_ * o.v_) % p, p);
    }

    Fp inverse() const {
        if (!bound() || v_ == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid on (v, p)
        int64_t a = static_cast<int64_t>(v_), m = static_cast<int64_t>(p_);
        int64_t x0 = 1, x1 = 0, b = m;
        while (b != 0) {
            int64_t q = a / b;
            int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        assert(a == 1);
        return from_int(x0, p_);
    }

    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const {
        if (p_ == 0 || o.p_ == 0) return v_ == o.v_;
        assert(p_ == o.p_);
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    uint32_t join_modulus(const Fp& o) const {
        if (p_ == 0) return o.p_;
        if (o.p_ == 0) return p_;
        assert(p_ == o.p_);
        return p_;
    }

    uint64_t v_;
    uint32_t p_;
};

// Field context for GF(p): mints constants and random elements.
class GFp {
public:
    using Elem = Fp;

    explicit GFp(uint32_t p) : p_(p) {
        if (p < 2 || p >= (1u << 31))
            throw std::invalid_argument("GFp: modulus must be in [2, 2^31)");
    }

    uint32_t modulus() const { return p_; }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp from_int(int64_t x) const { return Fp::from_int(x, p_); }

    template <typename Rng>
    Fp random(Rng& rng) const {
        // rejection sampling keeps the draw uniform and deterministic
        uint64_t bound = UINT64_MAX - UINT64_MAX % p_;
        uint64_t r;
        do { r = rng(); } while (r >= bound);
        return Fp(r % p_, p_);
    }

    std::string descriptor() const { return "fp:" + std::to_string(p_); }

private:
    uint32_t p_;
};

}  // namespace isogeo
