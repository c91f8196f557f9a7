#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace cyode {

/// Dense univariate polynomial over R, coefficients indexed by degree.
/// Normal form: no trailing zero coefficients (the zero polynomial has an
/// empty coefficient list).
template <CoefficientRing R>
class DensePolynomial {
  public:
    DensePolynomial() = default;
    explicit DensePolynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { strip(); }
    explicit DensePolynomial(const R& constant) : c_{constant} { strip(); }

    static DensePolynomial zero() { return DensePolynomial(); }
    static DensePolynomial monomial(const R& coeff, std::size_t deg) {
        if (coeff.is_zero()) return DensePolynomial();
        std::vector<R> v(deg + 1, coeff.zero());
        v[deg] = coeff;
        return DensePolynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<R>& coeffs() const { return c_; }

    /// Coefficient of t^k; needs an exemplar to make 0 past the end.
    R coeff(std::size_t k, const R& exemplar) const {
        return k < c_.size() ? c_[k] : exemplar.zero();
    }

    R leading() const {
        if (is_zero()) throw std::domain_error("polynomial: leading coefficient of zero");
        return c_.back();
    }

    R eval(const R& x) const {
        if (is_zero()) return x.zero();
        R acc = c_.back();
        for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    R eval_at_zero(const R& exemplar) const { return coeff(0, exemplar); }

    DensePolynomial operator-() const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(-x);
        return DensePolynomial(std::move(v));
    }

    friend DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b) {
        const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
        const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
        std::vector<R> v = big;
        for (std::size_t k = 0; k < small.size(); ++k) v[k] = v[k] + small[k];
        return DensePolynomial(std::move(v));
    }
    friend DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b) {
        return a + (-b);
    }
    friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
        if (a.is_zero() || b.is_zero()) return DensePolynomial();
        const R z = a.c_[0].zero();
        std::vector<R> v(a.c_.size() + b.c_.size() - 1, z);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return DensePolynomial(std::move(v));
    }

    DensePolynomial scaled(const R& s) const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(x * s);
        return DensePolynomial(std::move(v));
    }

    friend bool operator==(const DensePolynomial& a, const DensePolynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t k = 0; k < a.c_.size(); ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }
    friend bool operator!=(const DensePolynomial& a, const DensePolynomial& b) { return !(a == b); }

    /// d/dt.
    DensePolynomial derivative() const {
        if (c_.size() <= 1) return DensePolynomial();
        std::vector<R> v;
        v.reserve(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k].from_int(static_cast<long>(k)) * c_[k]);
        return DensePolynomial(std::move(v));
    }

    /// t * d/dt (multiplies the degree-k coefficient by k).
    DensePolynomial theta() const {
        std::vector<R> v = c_;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k].from_int(static_cast<long>(k)) * v[k];
        return DensePolynomial(std::move(v));
    }

    DensePolynomial monic() const {
        if (is_zero()) throw std::domain_error("polynomial: cannot make zero monic");
        return scaled(leading().inverse());
    }

  private:
    void strip() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<R> c_;
};

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <CoefficientRing R>
std::pair<DensePolynomial<R>, DensePolynomial<R>> poly_divmod(const DensePolynomial<R>& a,
                                                              const DensePolynomial<R>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial: division by zero");
    DensePolynomial<R> r = a;
    if (a.degree() < b.degree()) return {DensePolynomial<R>(), r};
    const R lead_inv = b.leading().inverse();
    const R z = b.leading().zero();
    std::vector<R> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, z);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        const R factor = r.leading() * lead_inv;
        q[shift] = q[shift] + factor;
        r = r - DensePolynomial<R>::monomial(factor, shift) * b;
    }
    return {DensePolynomial<R>(std::move(q)), r};
}

/// Monic gcd over a field.
template <CoefficientRing R>
DensePolynomial<R> poly_gcd(DensePolynomial<R> a, DensePolynomial<R> b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

template <CoefficientRing R>
DensePolynomial<R> poly_lcm(const DensePolynomial<R>& a, const DensePolynomial<R>& b) {
    if (a.is_zero() || b.is_zero()) return DensePolynomial<R>();
    const auto g = poly_gcd(a, b);
    return (poly_divmod(a, g).first * b).monic();
}

/// True iff gcd(f, f') is constant.
template <CoefficientRing R>
bool poly_is_squarefree(const DensePolynomial<R>& f) {
    if (f.is_zero()) return false;
    if (f.degree() == 0) return true;
    return poly_gcd(f, f.derivative()).degree() == 0;
}

/// Yun's squarefree decomposition: f = lc * prod_i part[i]^(i+1) with the
/// parts monic, squarefree and pairwise coprime.  Characteristic-0 fields.
template <CoefficientRing R>
std::vector<DensePolynomial<R>> squarefree_decomposition(const DensePolynomial<R>& f) {
    std::vector<DensePolynomial<R>> parts;
    if (f.degree() <= 0) return parts;
    const DensePolynomial<R> g = f.monic();
    const DensePolynomial<R> a0 = poly_gcd(g, g.derivative());
    DensePolynomial<R> b = poly_divmod(g, a0).first;
    DensePolynomial<R> c = poly_divmod(g.derivative(), a0).first;
    DensePolynomial<R> d = c - b.derivative();
    while (b.degree() > 0) {
        DensePolynomial<R> part = poly_gcd(b, d);
        parts.push_back(part);
        b = poly_divmod(b, part).first;
        c = poly_divmod(d, part).first;
        d = c - b.derivative();
    }
    return parts;
}

} // namespace cyode
