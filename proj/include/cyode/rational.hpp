#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyode {

using Integer = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.  Thin value wrapper over GMP's mpq.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const Integer& n) : q_(n) {}
    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    /// Accepts "a" or "a/b" in base 10.
    explicit Rational(const std::string& s) {
        if (q_.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_unit() const { return q_ != 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(1 / q_);
    }

    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long n) const { return Rational(n); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
    Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
    Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

    /// "a" when integral, "a/b" otherwise.
    std::string str() const { return q_.get_str(); }

    const mpq_class& raw() const { return q_; }

  private:
    explicit Rational(const mpq_class& q) : q_(q) {}
    mpq_class q_;
};

inline Rational pow(const Rational& base, long e) {
    if (e < 0) return pow(base.inverse(), -e);
    mpq_class acc(1);
    mpq_class b = base.raw();
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    Rational r;
    r += Rational(acc.get_num(), acc.get_den());
    return r;
}

} // namespace cyode
