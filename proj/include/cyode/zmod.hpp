#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace cyode {

namespace detail {

inline std::int64_t mod_norm(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

/// Inverse mod m via extended Euclid; throws when gcd(a, m) != 1.
inline std::int64_t mod_inv(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = mod_norm(a, m);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        std::int64_t t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("mod_inv: not a unit");
    return mod_norm(t0, m);
}

inline bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

/// Element of the prime field F_p.  The modulus travels with the value;
/// mixing moduli is an error.
class Fp {
  public:
    Fp() : p_(0), v_(0) {}
    Fp(std::int64_t value, std::int64_t p) : p_(p), v_(detail::mod_norm(value, check(p))) {}

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }

    Fp inverse() const {
        require_valid();
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        return Fp(detail::mod_inv(v_, p_), p_);
    }

    Fp zero() const { require_valid(); return Fp(0, p_); }
    Fp one() const { require_valid(); return Fp(1, p_); }
    Fp from_int(long n) const { require_valid(); return Fp(n, p_); }

    Fp operator-() const { require_valid(); return Fp(-v_, p_); }
    friend Fp operator+(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ + b.v_, a.p_); }
    friend Fp operator-(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ - b.v_, a.p_); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        a.match(b);
        return Fp(detail::mod_mul(a.v_, b.v_, a.p_), a.p_);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    friend bool operator==(const Fp& a, const Fp& b) { a.match(b); return a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    std::string str() const { return std::to_string(v_); }

  private:
    static std::int64_t check(std::int64_t p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be a prime >= 2");
        return p;
    }
    void require_valid() const {
        if (p_ == 0) throw std::logic_error("Fp: use of a default-constructed element");
    }
    void match(const Fp& other) const {
        require_valid();
        if (p_ != other.p_) throw std::invalid_argument("Fp: mixed moduli");
    }
    std::int64_t p_;
    std::int64_t v_;
};

/// Element of Z/p^s.  Division is defined only by units (residues coprime
/// to p); anything else is an error, never a partial result.
class Zps {
  public:
    Zps() : p_(0), s_(0), q_(0), v_(0) {}
    Zps(std::int64_t value, std::int64_t p, unsigned s) : p_(p), s_(s), q_(pow_checked(p, s)) {
        v_ = detail::mod_norm(value, q_);
    }

    std::int64_t value() const { return v_; }
    std::int64_t prime() const { return p_; }
    unsigned exponent() const { return s_; }
    std::int64_t modulus() const { return q_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return p_ != 0 && v_ % p_ != 0; }

    Zps inverse() const {
        require_valid();
        if (!is_unit()) throw std::domain_error("Zps: inverse of a non-unit");
        return with_value(detail::mod_inv(v_, q_));
    }

    Zps zero() const { require_valid(); return with_value(0); }
    Zps one() const { require_valid(); return with_value(1); }
    Zps from_int(long n) const { require_valid(); return with_value(detail::mod_norm(n, q_)); }

    Zps operator-() const { require_valid(); return with_value(detail::mod_norm(-v_, q_)); }
    friend Zps operator+(const Zps& a, const Zps& b) { a.match(b); return a.with_value(detail::mod_norm(a.v_ + b.v_, a.q_)); }
    friend Zps operator-(const Zps& a, const Zps& b) { a.match(b); return a.with_value(detail::mod_norm(a.v_ - b.v_, a.q_)); }
    friend Zps operator*(const Zps& a, const Zps& b) {
        a.match(b);
        return a.with_value(detail::mod_mul(a.v_, b.v_, a.q_));
    }
    friend Zps operator/(const Zps& a, const Zps& b) { return a * b.inverse(); }
    friend bool operator==(const Zps& a, const Zps& b) { a.match(b); return a.v_ == b.v_; }
    friend bool operator!=(const Zps& a, const Zps& b) { return !(a == b); }

    Zps pow(unsigned long e) const {
        require_valid();
        std::int64_t acc = 1, base = v_;
        while (e) {
            if (e & 1) acc = detail::mod_mul(acc, base, q_);
            base = detail::mod_mul(base, base, q_);
            e >>= 1;
        }
        return with_value(acc);
    }

    /// Image in Z/p^r for r <= s.
    Zps reduced_to(unsigned r) const {
        require_valid();
        if (r < 1 || r > s_) throw std::invalid_argument("Zps: bad reduction exponent");
        return Zps(v_, p_, r);
    }

    std::string str() const { return std::to_string(v_); }

  private:
    static std::int64_t pow_checked(std::int64_t p, unsigned s) {
        if (p < 2) throw std::invalid_argument("Zps: prime must be >= 2");
        if (s < 1) throw std::invalid_argument("Zps: exponent must be >= 1");
        std::int64_t q = 1;
        for (unsigned i = 0; i < s; ++i) {
            if (q > (std::int64_t{1} << 62) / p) throw std::overflow_error("Zps: p^s too large");
            q *= p;
        }
        return q;
    }
    void require_valid() const {
        if (p_ == 0) throw std::logic_error("Zps: use of a default-constructed element");
    }
    void match(const Zps& other) const {
        require_valid();
        if (p_ != other.p_ || s_ != other.s_) throw std::invalid_argument("Zps: mixed moduli");
    }
    Zps with_value(std::int64_t v) const {
        Zps r;
        r.p_ = p_; r.s_ = s_; r.q_ = q_; r.v_ = v;
        return r;
    }

    std::int64_t p_;
    unsigned s_;
    std::int64_t q_;
    std::int64_t v_;
};

/// Reduction of a rational mod p^s; the denominator must be a unit.
inline Zps reduce_mod(const Rational& x, std::int64_t p, unsigned s) {
    Zps probe(0, p, s);
    const Integer q(probe.modulus());
    Integer num = x.numerator() % q;
    Integer den = x.denominator() % q;
    const Zps d(den.get_si(), p, s);
    if (!d.is_unit())
        throw std::domain_error("reduce_mod: denominator divisible by " + std::to_string(p));
    return Zps(num.get_si(), p, s) * d.inverse();
}

inline Fp reduce_mod_p(const Rational& x, std::int64_t p) {
    const Zps z = reduce_mod(x, p, 1);
    return Fp(z.value(), p);
}

} // namespace cyode
