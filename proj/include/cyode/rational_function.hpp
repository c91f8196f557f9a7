#pragma once

#include <stdexcept>
#include <utility>

#include "polynomial.hpp"
#include "ring.hpp"

namespace cyode {

/// Quotient of two polynomials over a field R, kept in normal form:
/// gcd(num, den) = 1 and den monic.  Equality of values is therefore
/// representational equality.
template <CoefficientRing R>
class RationalFunction {
  public:
    using Poly = DensePolynomial<R>;

    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function: zero denominator");
        normalize();
    }
    explicit RationalFunction(const R& constant)
        : num_(Poly(constant)), den_(Poly(constant.one())) {}

    /// Polynomial with an explicit ring exemplar (covers the zero polynomial).
    RationalFunction(Poly num, const R& exemplar)
        : num_(std::move(num)), den_(Poly(exemplar.one())) {}

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    /// Any nonzero coefficient of the underlying ring (the denominator is
    /// never the zero polynomial).
    R exemplar() const { return den_.leading(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return !is_zero(); }

    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("rational function: inverse of zero");
        return RationalFunction(den_, num_);
    }

    RationalFunction zero() const { return RationalFunction(Poly(), exemplar()); }
    RationalFunction one() const { return RationalFunction(Poly(exemplar().one()), exemplar()); }
    RationalFunction from_int(long n) const {
        return RationalFunction(Poly(exemplar().from_int(n)), exemplar());
    }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, 0); }

    RationalFunction scaled_by_int(long n) const {
        if (n == 0) return zero();
        return RationalFunction(num_.scaled(exemplar().from_int(n)), den_, 0);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("rational function: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    bool has_pole_at_zero() const { return den_.coeff(0, exemplar()).is_zero(); }

    /// Value at t = 0; error on a pole.
    R eval_at_zero() const {
        const R d0 = den_.coeff(0, exemplar());
        if (d0.is_zero()) throw std::domain_error("rational function: pole at the origin");
        return num_.coeff(0, exemplar()) * d0.inverse();
    }

    R eval(const R& x) const {
        const R d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("rational function: evaluation at a pole");
        return num_.eval(x) * d.inverse();
    }

    /// t * d/dt.
    RationalFunction theta() const {
        return RationalFunction(num_.theta() * den_ - num_ * den_.theta(), den_ * den_);
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

  private:
    // Trusted normal-form constructor.
    RationalFunction(Poly num, Poly den, int) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly(den_.leading().one());
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = poly_divmod(num_, g).first;
            den_ = poly_divmod(den_, g).first;
        }
        const R lead_inv = den_.leading().inverse();
        num_ = num_.scaled(lead_inv);
        den_ = den_.scaled(lead_inv);
    }

    Poly num_;
    Poly den_;
};

} // namespace cyode
