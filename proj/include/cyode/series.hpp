#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational_function.hpp"
#include "ring.hpp"

namespace cyode {

/// Power series known through degree N-1 (N = truncation order).  Binary
/// operations return the minimum of the operands' orders so precision is
/// never overstated.
template <CoefficientRing R>
class TruncatedSeries {
  public:
    explicit TruncatedSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("series: order must be at least 1");
    }

    static TruncatedSeries zero(const R& exemplar, std::size_t order) {
        return TruncatedSeries(std::vector<R>(order, exemplar.zero()));
    }
    static TruncatedSeries one(const R& exemplar, std::size_t order) {
        auto s = zero(exemplar, order);
        s.c_[0] = exemplar.one();
        return s;
    }
    /// The identity series t.
    static TruncatedSeries t(const R& exemplar, std::size_t order) {
        auto s = zero(exemplar, order);
        if (order > 1) s.c_[1] = exemplar.one();
        return s;
    }
    static TruncatedSeries from_poly(const DensePolynomial<R>& p, const R& exemplar,
                                     std::size_t order) {
        auto s = zero(exemplar, order);
        for (std::size_t k = 0; k < order; ++k) s.c_[k] = p.coeff(k, exemplar);
        return s;
    }

    std::size_t order() const { return c_.size(); }
    const R& coeff(std::size_t k) const {
        if (k >= c_.size()) throw std::out_of_range("series: coefficient beyond truncation order");
        return c_[k];
    }
    const std::vector<R>& coeffs() const { return c_; }
    R exemplar() const { return c_[0].zero(); }

    void set_coeff(std::size_t k, const R& v) {
        if (k >= c_.size()) throw std::out_of_range("series: coefficient beyond truncation order");
        c_[k] = v;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const R& x) { return x.is_zero(); });
    }

    /// Degree of the lowest nonzero coefficient; order() when none.
    std::size_t valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return k;
        return c_.size();
    }

    TruncatedSeries truncated(std::size_t new_order) const {
        if (new_order == 0 || new_order > c_.size())
            throw std::invalid_argument("series: bad truncation order");
        return TruncatedSeries(std::vector<R>(c_.begin(), c_.begin() + new_order));
    }

    DensePolynomial<R> to_poly(std::size_t below) const {
        if (below > c_.size()) throw std::invalid_argument("series: not enough coefficients");
        return DensePolynomial<R>(std::vector<R>(c_.begin(), c_.begin() + below));
    }

    bool agrees_with(const TruncatedSeries& other, std::size_t through_order) const {
        if (through_order > c_.size() || through_order > other.c_.size())
            throw std::invalid_argument("series: comparison beyond truncation order");
        for (std::size_t k = 0; k < through_order; ++k)
            if (!(c_[k] == other.c_[k])) return false;
        return true;
    }

    TruncatedSeries operator-() const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(-x);
        return TruncatedSeries(std::move(v));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v;
        v.reserve(n);
        for (std::size_t k = 0; k < n; ++k) v.push_back(a.c_[k] + b.c_[k]);
        return TruncatedSeries(std::move(v));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v;
        v.reserve(n);
        for (std::size_t k = 0; k < n; ++k) v.push_back(a.c_[k] - b.c_[k]);
        return TruncatedSeries(std::move(v));
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<R> v(n, a.c_[0].zero());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < n; ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return TruncatedSeries(std::move(v));
    }

    TruncatedSeries scaled(const R& s) const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(x * s);
        return TruncatedSeries(std::move(v));
    }

    /// Multiplication by t^k (drops the top k known coefficients).
    TruncatedSeries shifted_up(std::size_t k) const {
        std::vector<R> v(c_.size(), c_[0].zero());
        for (std::size_t j = 0; j + k < c_.size(); ++j) v[j + k] = c_[j];
        return TruncatedSeries(std::move(v));
    }

    /// Reciprocal of a unit series (constant term a unit).
    TruncatedSeries inverse() const {
        if (!c_[0].is_unit())
            throw std::domain_error("series: inverse requires a unit constant term");
        const R u = c_[0].inverse();
        std::vector<R> v(c_.size(), c_[0].zero());
        v[0] = u;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            R acc = c_[0].zero();
            for (std::size_t j = 1; j <= k; ++j) acc = acc + c_[j] * v[k - j];
            v[k] = -(acc * u);
        }
        return TruncatedSeries(std::move(v));
    }

    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a * b.inverse();
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c_ == b.c_;
    }

  private:
    std::vector<R> c_;
};

/// theta = t d/dt: multiplies the degree-k coefficient by k.
template <CoefficientRing R>
TruncatedSeries<R> theta_derive(const TruncatedSeries<R>& f) {
    std::vector<R> v(f.coeffs());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k].from_int(static_cast<long>(k)) * v[k];
    return TruncatedSeries<R>(std::move(v));
}

/// theta-antiderivative with value 0 at the origin: the degree-k
/// coefficient is divided by k.  The constant term of f must vanish
/// (otherwise a logarithm would appear).
template <CoefficientRing R>
TruncatedSeries<R> log_integrate(const TruncatedSeries<R>& f) {
    if (!f.coeff(0).is_zero())
        throw std::domain_error("log_integrate: nonzero constant term");
    std::vector<R> v(f.coeffs());
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        v[k] = v[k] * v[k].from_int(static_cast<long>(k)).inverse();
    }
    return TruncatedSeries<R>(std::move(v));
}

/// exp of a series with zero constant term, via k e_k = sum j f_j e_{k-j}.
template <CoefficientRing R>
TruncatedSeries<R> series_exp(const TruncatedSeries<R>& f) {
    if (!f.coeff(0).is_zero())
        throw std::domain_error("series_exp: nonzero constant term");
    const R z = f.exemplar();
    std::vector<R> e(f.order(), z);
    e[0] = z.one();
    for (std::size_t k = 1; k < e.size(); ++k) {
        R acc = z;
        for (std::size_t j = 1; j <= k; ++j)
            acc = acc + z.from_int(static_cast<long>(j)) * f.coeff(j) * e[k - j];
        e[k] = acc.is_zero() ? z : acc * z.from_int(static_cast<long>(k)).inverse();
    }
    return TruncatedSeries<R>(std::move(e));
}

/// log of a series with constant term 1: integrate theta(u)/u.
template <CoefficientRing R>
TruncatedSeries<R> series_log(const TruncatedSeries<R>& u) {
    if (!(u.coeff(0) == u.coeff(0).one()))
        throw std::domain_error("series_log: constant term must be 1");
    return log_integrate(theta_derive(u) / u);
}

/// Composition f(g) for g with zero constant term (Horner from the top).
template <CoefficientRing R>
TruncatedSeries<R> series_compose(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    if (!g.coeff(0).is_zero())
        throw std::domain_error("series_compose: inner constant term must vanish");
    const std::size_t n = std::min(f.order(), g.order());
    auto acc = TruncatedSeries<R>::zero(f.exemplar(), n);
    const auto gt = g.truncated(n);
    for (std::size_t k = n; k-- > 0;) {
        acc = acc * gt;
        acc.set_coeff(0, acc.coeff(0) + f.coeff(k));
    }
    return acc;
}

/// Compositional inverse of f in t + t^2 K[[t]] (Newton iteration with
/// precision doubling).
template <CoefficientRing R>
TruncatedSeries<R> series_reverse(const TruncatedSeries<R>& f) {
    const R z = f.exemplar();
    if (!f.coeff(0).is_zero() || f.order() < 2 || !(f.coeff(1) == z.one()))
        throw std::domain_error("series_reverse: input must be t + O(t^2)");
    const std::size_t n = f.order();
    // d(f)/dt as a series (not theta).
    auto ddt = [&z](const TruncatedSeries<R>& s) {
        std::vector<R> v(s.order(), z);
        for (std::size_t k = 0; k + 1 < s.order(); ++k)
            v[k] = z.from_int(static_cast<long>(k + 1)) * s.coeff(k + 1);
        return TruncatedSeries<R>(std::move(v));
    };
    std::size_t prec = 2;
    auto g = TruncatedSeries<R>::t(z, prec);
    while (prec < n) {
        prec = std::min(n, 2 * prec);
        const auto fp = f.truncated(prec);
        // pad g with zero coefficients up to the new precision
        std::vector<R> gv(prec, z);
        for (std::size_t k = 0; k < g.order(); ++k) gv[k] = g.coeff(k);
        g = TruncatedSeries<R>(std::move(gv));
        const auto q = TruncatedSeries<R>::t(z, prec);
        const auto err = series_compose(fp, g) - q;
        const auto slope = series_compose(ddt(fp), g);
        g = g - err / slope;
    }
    return g;
}

/// Coefficientwise product.
template <CoefficientRing R>
TruncatedSeries<R> hadamard(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    const std::size_t n = std::min(f.order(), g.order());
    std::vector<R> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) v.push_back(f.coeff(k) * g.coeff(k));
    return TruncatedSeries<R>(std::move(v));
}

/// Expansion of a rational function at the origin (denominator must not
/// vanish there).
template <CoefficientRing R>
TruncatedSeries<R> expand_at_zero(const RationalFunction<R>& f, std::size_t order) {
    const R ex = f.exemplar();
    if (f.has_pole_at_zero())
        throw std::domain_error("series: rational function has a pole at the origin");
    const auto num = TruncatedSeries<R>::from_poly(f.numerator(), ex, order);
    const auto den = TruncatedSeries<R>::from_poly(f.denominator(), ex, order);
    return num / den;
}

} // namespace cyode
