#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "log_series.hpp"
#include "pade.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "series.hpp"

namespace cyode {

enum class Verdict { yes, no, undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "undetermined";
    }
}

/// Element of K(t)[theta]: sum_i c_i(t) theta^i with rational-function
/// coefficients.  Not necessarily monic; the zero operator is allowed.
template <CoefficientRing R>
class ThetaPoly {
  public:
    using RatFun = RationalFunction<R>;

    explicit ThetaPoly(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) { strip(); }
    explicit ThetaPoly(RatFun scalar) : c_{std::move(scalar)} { strip(); }

    bool is_zero() const { return c_.empty(); }
    /// Degree in theta; -1 for the zero operator.
    long order() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<RatFun>& coeffs() const { return c_; }
    RatFun coeff(std::size_t i, const RatFun& exemplar) const {
        return i < c_.size() ? c_[i] : exemplar.zero();
    }
    const RatFun& leading() const {
        if (c_.empty()) throw std::domain_error("theta poly: zero operator");
        return c_.back();
    }

    ThetaPoly operator-() const {
        std::vector<RatFun> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(-x);
        return ThetaPoly(std::move(v));
    }

    friend ThetaPoly operator+(const ThetaPoly& a, const ThetaPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const RatFun ex = a.c_[0];
        std::vector<RatFun> v;
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i) v.push_back(a.coeff(i, ex) + b.coeff(i, ex));
        return ThetaPoly(std::move(v));
    }
    friend ThetaPoly operator-(const ThetaPoly& a, const ThetaPoly& b) { return a + (-b); }

    ThetaPoly scaled(const RatFun& g) const {
        std::vector<RatFun> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(x * g);
        return ThetaPoly(std::move(v));
    }

    friend bool operator==(const ThetaPoly& a, const ThetaPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ThetaPoly& a, const ThetaPoly& b) { return !(a == b); }

  private:
    void strip() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFun> c_;
};

/// Product in K(t)[theta] under the commutation rule theta g = g theta + theta(g):
/// theta^i g = sum_k binom(i,k) theta^k(g) theta^(i-k).
template <CoefficientRing R>
ThetaPoly<R> compose(const ThetaPoly<R>& a, const ThetaPoly<R>& b) {
    if (a.is_zero() || b.is_zero()) return ThetaPoly<R>(std::vector<RationalFunction<R>>{});
    const auto ex = b.leading();
    const std::size_t na = a.coeffs().size();
    const std::size_t nb = b.coeffs().size();
    std::vector<RationalFunction<R>> out(na + nb - 1, ex.zero());
    // theta-derivatives of b's coefficients, up to the maximal power of a
    std::vector<std::vector<RationalFunction<R>>> der(nb);
    for (std::size_t j = 0; j < nb; ++j) {
        der[j].push_back(b.coeffs()[j]);
        for (std::size_t k = 1; k < na; ++k) der[j].push_back(der[j][k - 1].theta());
    }
    // binomials as ring constants
    std::vector<std::vector<Integer>> binom(na, std::vector<Integer>(na, 0));
    for (std::size_t i = 0; i < na; ++i) {
        binom[i][0] = 1;
        for (std::size_t k = 1; k <= i; ++k)
            binom[i][k] = binom[i - 1][k - 1] + (k <= i - 1 ? binom[i - 1][k] : Integer(0));
    }
    for (std::size_t i = 0; i < na; ++i) {
        if (a.coeffs()[i].is_zero()) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b.coeffs()[j].is_zero()) continue;
            for (std::size_t k = 0; k <= i; ++k) {
                const long bk = binom[i][k].get_si();
                out[i - k + j] = out[i - k + j] + a.coeffs()[i] * der[j][k].scaled_by_int(bk);
            }
        }
    }
    return ThetaPoly<R>(std::move(out));
}

/// Formal adjoint: L* = (-1)^n theta^n + sum_i (-1)^i theta^i a_i,
/// expanded to coefficient form.
template <CoefficientRing R>
ThetaPoly<R> formal_adjoint(const ThetaPoly<R>& op) {
    if (op.is_zero()) return op;
    const auto ex = op.leading();
    std::vector<RationalFunction<R>> acc(op.coeffs().size(), ex.zero());
    ThetaPoly<R> out(std::move(acc));
    for (std::size_t i = 0; i < op.coeffs().size(); ++i) {
        if (op.coeffs()[i].is_zero()) continue;
        std::vector<RationalFunction<R>> theta_i(i + 1, ex.zero());
        theta_i[i] = ex.one();
        auto term = compose(ThetaPoly<R>(std::move(theta_i)), ThetaPoly<R>(op.coeffs()[i]));
        if (i % 2 == 1) term = -term;
        out = out + term;
    }
    return out;
}

/// Monic differential operator theta^n + sum a_i theta^i, n >= 1, with the
/// pre-monicization form retained for display.
class ThetaOperator {
  public:
    using RatFun = RationalFunction<Rational>;
    using Poly = ThetaPoly<Rational>;

    explicit ThetaOperator(Poly raw)
        : raw_(checked(raw)), monic_(raw.scaled(raw.leading().inverse())) {}

    std::size_t order() const { return static_cast<std::size_t>(monic_.order()); }

    /// Coefficient a_i of the monic form, 0 <= i < order.
    RatFun a(std::size_t i) const {
        if (i >= order()) throw std::out_of_range("operator: coefficient index");
        return monic_.coeffs()[i];
    }

    const Poly& monic_poly() const { return monic_; }
    const Poly& raw_poly() const { return raw_; }

    friend bool operator==(const ThetaOperator& x, const ThetaOperator& y) {
        return x.monic_ == y.monic_;
    }
    friend bool operator!=(const ThetaOperator& x, const ThetaOperator& y) { return !(x == y); }

    /// Denominator-free form: polynomials (ell*a_0, ..., ell*a_{n-1}, ell)
    /// where ell is the lcm of the a_i denominators.
    std::vector<DensePolynomial<Rational>> polynomial_form() const {
        DensePolynomial<Rational> ell{Rational(1)};
        for (const auto& c : monic_.coeffs()) ell = poly_lcm(ell, c.denominator());
        std::vector<DensePolynomial<Rational>> out;
        out.reserve(order() + 1);
        for (const auto& c : monic_.coeffs())
            out.push_back(c.numerator() * poly_divmod(ell, c.denominator()).first);
        return out;
    }

  private:
    static Poly checked(const Poly& raw) {
        if (raw.order() < 1)
            throw std::invalid_argument("operator: order must be at least 1");
        return raw;
    }
    Poly raw_;
    Poly monic_;
};

namespace detail {
inline ThetaOperator::RatFun rf_const(const Rational& c) {
    return ThetaOperator::RatFun(c);
}
} // namespace detail

/// Indicial polynomial at the origin: s^n + sum a_i(0) s^i.  Errors when a
/// coefficient has a pole at t = 0.
inline DensePolynomial<Rational> indicial_polynomial(const ThetaOperator& op) {
    std::vector<Rational> v(op.order() + 1, Rational(0));
    v.back() = Rational(1);
    for (std::size_t i = 0; i < op.order(); ++i) {
        if (op.a(i).has_pole_at_zero())
            throw std::domain_error("indicial polynomial: coefficient a_" + std::to_string(i) +
                                    " has a pole at the origin (irregular/non-normalized)");
        v[i] = op.a(i).eval_at_zero();
    }
    return DensePolynomial<Rational>(std::move(v));
}

/// Condition (N): all coefficients finite at 0 and indicial polynomial s^n.
inline bool check_condition_N(const ThetaOperator& op) {
    for (std::size_t i = 0; i < op.order(); ++i) {
        if (op.a(i).has_pole_at_zero()) return false;
        if (!op.a(i).eval_at_zero().is_zero()) return false;
    }
    return true;
}

/// beta = exp((2/n) int a_{n-1} dt/t), normalized beta(0) = 1.
inline TruncatedSeries<Rational> beta_series(const ThetaOperator& op, std::size_t order) {
    if (!check_condition_N(op))
        throw std::domain_error("beta_series: operator does not satisfy condition (N)");
    const auto an1 = expand_at_zero(op.a(op.order() - 1), order);
    const Rational scale(2, static_cast<long>(op.order()));
    return series_exp(log_integrate(an1).scaled(scale));
}

/// Pade-reconstructs beta from its series with growing bounds and verifies
/// n theta(beta) = 2 a_{n-1} beta exactly.  nullopt = undetermined within
/// the cap (not a proof of irrationality).
inline std::optional<RationalFunction<Rational>> beta_rational(const ThetaOperator& op,
                                                               std::size_t order = 64) {
    const auto series = beta_series(op, order);
    const Rational n(static_cast<long>(op.order()));
    const auto an1 = op.a(op.order() - 1);
    for (std::size_t d = 1; 2 * d + 2 <= order; ++d) {
        auto cand = pade_reconstruct(series, d, d);
        if (!cand) continue;
        const auto& beta = *cand;
        if (beta.theta().scaled_by_int(static_cast<long>(op.order())) ==
            an1 * beta.scaled_by_int(2))
            return beta;
        return std::nullopt; // matched all coefficients but fails the ODE: inconclusive
    }
    return std::nullopt;
}

/// L* == (-1)^n beta L beta^{-1}, compared coefficientwise in normal form.
inline Verdict is_self_adjoint(const ThetaOperator& op,
                               std::optional<RationalFunction<Rational>> beta = std::nullopt) {
    if (!check_condition_N(op)) return Verdict::undetermined;
    if (!beta) beta = beta_rational(op);
    if (!beta) return Verdict::undetermined;
    const auto lhs = formal_adjoint(op.monic_poly());
    auto rhs = compose(compose(ThetaOperator::Poly(*beta), op.monic_poly()),
                       ThetaOperator::Poly(beta->inverse()));
    if (op.order() % 2 == 1) rhs = -rhs;
    return lhs == rhs ? Verdict::yes : Verdict::no;
}

/// Order-3 self-adjointness relation 2 beta b0 = (beta b1)' - (beta b2)'' + beta'''.
inline Verdict relation_check_order3(const ThetaOperator& op) {
    if (op.order() != 3) throw std::invalid_argument("relation_check_order3: order must be 3");
    const auto beta = beta_rational(op);
    if (!beta) return Verdict::undetermined;
    const auto& b = *beta;
    const auto b0 = op.a(0), b1 = op.a(1), b2 = op.a(2);
    const auto lhs = (b * b0).scaled_by_int(2);
    const auto rhs = (b * b1).theta() - (b * b2).theta().theta() + b.theta().theta().theta();
    return lhs == rhs ? Verdict::yes : Verdict::no;
}

/// Order-4 relation a1 = a2' + a2 a3 / 2 - a3''/2 - 3 a3 a3'/4 - a3^3/8.
inline Verdict relation_check_order4(const ThetaOperator& op) {
    if (op.order() != 4) throw std::invalid_argument("relation_check_order4: order must be 4");
    const auto a1 = op.a(1), a2 = op.a(2), a3 = op.a(3);
    const auto half = detail::rf_const(Rational(1, 2));
    const auto rhs = a2.theta() + half * a2 * a3 - half * a3.theta().theta() -
                     detail::rf_const(Rational(3, 4)) * a3 * a3.theta() -
                     detail::rf_const(Rational(1, 8)) * a3 * a3 * a3;
    return a1 == rhs ? Verdict::yes : Verdict::no;
}

/// Order-5 relations: 2(beta b2) - 3(beta b3)' + 4(beta b4)'' - 5 beta''' = 0
/// and 2(beta b0) = (beta b1)' - (beta b2)'' + (beta b3)''' - (beta b4)'''' + beta'''''.
inline Verdict relation_check_order5(const ThetaOperator& op) {
    if (op.order() != 5) throw std::invalid_argument("relation_check_order5: order must be 5");
    const auto beta = beta_rational(op);
    if (!beta) return Verdict::undetermined;
    const auto& b = *beta;
    const auto th = [](RationalFunction<Rational> f, int k) {
        for (int i = 0; i < k; ++i) f = f.theta();
        return f;
    };
    const auto r1 = (b * op.a(2)).scaled_by_int(2) - th(b * op.a(3), 1).scaled_by_int(3) +
                    th(b * op.a(4), 2).scaled_by_int(4) - th(b, 3).scaled_by_int(5);
    if (!r1.is_zero()) return Verdict::no;
    const auto lhs = (b * op.a(0)).scaled_by_int(2);
    const auto rhs = th(b * op.a(1), 1) - th(b * op.a(2), 2) + th(b * op.a(3), 3) -
                     th(b * op.a(4), 4) + th(b, 5);
    return lhs == rhs ? Verdict::yes : Verdict::no;
}

/// Differential Galois group inside SL(n) iff beta^n is the square of a
/// rational function g in 1 + t K[[t]] (Lemma criterion via squarefree
/// multiplicities).
inline Verdict sl_n_criterion(const ThetaOperator& op) {
    const auto beta = beta_rational(op);
    if (!beta) return Verdict::undetermined;
    RationalFunction<Rational> bn = beta->one();
    for (std::size_t i = 0; i < op.order(); ++i) bn = bn * (*beta);
    const auto half_power = [](const DensePolynomial<Rational>& p)
        -> std::optional<DensePolynomial<Rational>> {
        DensePolynomial<Rational> root{Rational(1)};
        const auto parts = squarefree_decomposition(p);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::size_t mult = i + 1;
            if (parts[i].degree() <= 0) continue;
            if (mult % 2 != 0) return std::nullopt;
            for (std::size_t j = 0; j < mult / 2; ++j) root = root * parts[i];
        }
        return root;
    };
    const auto rn = half_power(bn.numerator());
    const auto rd = half_power(bn.denominator());
    if (!rn || !rd) return Verdict::no;
    RationalFunction<Rational> g(*rn, *rd);
    // normalize g(0) = 1 (possible since beta^n(0) = 1 keeps 0 off num and den)
    const auto g0 = g.eval_at_zero();
    if (g0.is_zero()) return Verdict::no;
    g = g * detail::rf_const(g0.inverse());
    return g * g == bn ? Verdict::yes : Verdict::no;
}

/// sum a_i theta^i applied to a plain series (coefficients expanded at 0).
template <CoefficientRing R>
TruncatedSeries<R> apply(const ThetaPoly<R>& op, const TruncatedSeries<R>& y) {
    auto acc = TruncatedSeries<R>::zero(y.exemplar(), y.order());
    auto power = y;
    for (long i = 0; i <= op.order(); ++i) {
        const auto& c = op.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) acc = acc + expand_at_zero(c, y.order()) * power;
        if (i < op.order()) power = theta_derive(power);
    }
    return acc;
}

template <CoefficientRing R>
LogSeries<R> apply(const ThetaPoly<R>& op, const LogSeries<R>& y) {
    LogSeries<R> acc(TruncatedSeries<R>::zero(y.component(0).exemplar(), y.order()));
    auto power = y;
    for (long i = 0; i <= op.order(); ++i) {
        const auto& c = op.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) acc = acc + power.scaled_by(expand_at_zero(c, y.order()));
        if (i < op.order()) power = power.theta();
    }
    return acc;
}

inline TruncatedSeries<Rational> apply(const ThetaOperator& op, const TruncatedSeries<Rational>& y) {
    return apply(op.monic_poly(), y);
}
inline LogSeries<Rational> apply(const ThetaOperator& op, const LogSeries<Rational>& y) {
    return apply(op.monic_poly(), y);
}

/// Aggregate classification per the Calabi-Yau definition: condition (N)
/// plus self-adjointness.
struct ClassificationReport {
    bool condition_N = false;
    std::optional<RationalFunction<Rational>> beta;
    Verdict self_adjoint = Verdict::undetermined;
    bool calabi_yau = false;
    Verdict sl_n = Verdict::undetermined;
    std::vector<std::string> diagnostics;
};

inline ClassificationReport classify(const ThetaOperator& op, std::size_t order = 64) {
    ClassificationReport rep;
    rep.condition_N = check_condition_N(op);
    if (!rep.condition_N) {
        rep.diagnostics.push_back("condition (N) fails: nonzero exponents or pole at the origin");
        return rep;
    }
    rep.beta = beta_rational(op, order);
    if (!rep.beta) {
        rep.diagnostics.push_back("beta-factor not recognized as rational within the cap");
        rep.self_adjoint = Verdict::undetermined;
        return rep;
    }
    rep.self_adjoint = is_self_adjoint(op, rep.beta);
    rep.calabi_yau = rep.self_adjoint == Verdict::yes;
    rep.sl_n = sl_n_criterion(op);
    if (rep.calabi_yau) rep.diagnostics.push_back("operator is Calabi-Yau");
    return rep;
}

} // namespace cyode
