#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "log_series.hpp"
#include "series.hpp"
#include "theta_operator.hpp"

namespace cyode {

/// Frobenius basis at the origin for an operator with null exponents:
/// solutions F_i = sum_{j<=i} g_{i-j} (log t)^j / j! with g_0(0) = 1 and
/// g_j(0) = 0 for j >= 1.
class FrobeniusBasis {
  public:
    FrobeniusBasis(ThetaOperator op, std::vector<TruncatedSeries<Rational>> g)
        : op_(std::move(op)), g_(std::move(g)) {}

    std::size_t n() const { return g_.size(); }
    std::size_t order() const { return g_[0].order(); }
    const ThetaOperator& op() const { return op_; }

    const TruncatedSeries<Rational>& g(std::size_t j) const { return g_.at(j); }
    const TruncatedSeries<Rational>& F() const { return g_[0]; }

    /// F_i as an element of K[[t]][log t].
    LogSeries<Rational> solution(std::size_t i) const {
        if (i >= n()) throw std::out_of_range("frobenius basis: solution index");
        std::vector<TruncatedSeries<Rational>> comps;
        comps.reserve(i + 1);
        for (std::size_t j = 0; j <= i; ++j) comps.push_back(g_[i - j]);
        return LogSeries<Rational>(std::move(comps));
    }

  private:
    ThetaOperator op_;
    std::vector<TruncatedSeries<Rational>> g_;
};

namespace detail {

/// Banded data for the recursion: Q[s][m](x) = sum_r binom(r,s) P_{r,m} x^(r-s)
/// where P_r are the denominator-cleared coefficient polynomials.
struct BandedRecursion {
    std::vector<std::vector<DensePolynomial<Rational>>> Q; // [s][m]
    std::size_t band = 0;                                  // max t-degree D
    std::size_t n = 0;
    Rational lead0;                                        // ell(0) != 0

    explicit BandedRecursion(const ThetaOperator& op) {
        const auto P = op.polynomial_form();
        n = op.order();
        long deg = 0;
        for (const auto& p : P) deg = std::max(deg, p.degree());
        band = static_cast<std::size_t>(deg);
        lead0 = P[n].coeff(0, Rational(0));
        if (lead0.is_zero())
            throw std::domain_error("recursion: leading coefficient vanishes at the origin");
        std::vector<std::vector<Integer>> binom(n + 1, std::vector<Integer>(n + 1, 0));
        for (std::size_t i = 0; i <= n; ++i) {
            binom[i][0] = 1;
            for (std::size_t k = 1; k <= i; ++k)
                binom[i][k] = binom[i - 1][k - 1] + (k <= i - 1 ? binom[i - 1][k] : Integer(0));
        }
        Q.assign(n + 1, {});
        for (std::size_t s = 0; s <= n; ++s) {
            Q[s].reserve(band + 1);
            for (std::size_t m = 0; m <= band; ++m) {
                std::vector<Rational> qc(n - s + 1, Rational(0));
                for (std::size_t r = s; r <= n; ++r) {
                    const Rational prm = P[r].coeff(m, Rational(0));
                    if (prm.is_zero()) continue;
                    qc[r - s] = qc[r - s] + Rational(binom[r][s]) * prm;
                }
                Q[s].emplace_back(std::move(qc));
            }
        }
    }

    Rational eval(std::size_t s, std::size_t m, long x) const {
        return Q[s][m].eval(Rational(x));
    }
};

} // namespace detail

/// Solves for the Frobenius basis degree by degree.  Under condition (N)
/// the linear system at degree k is triangular with diagonal ell(0) k^n.
inline FrobeniusBasis frobenius_basis(const ThetaOperator& op, std::size_t order = 64) {
    if (!check_condition_N(op))
        throw std::domain_error("frobenius_basis: operator does not satisfy condition (N)");
    if (order < 2) throw std::invalid_argument("frobenius_basis: order must be at least 2");
    const detail::BandedRecursion rec(op);
    const std::size_t n = op.order();
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(order, Rational(0)));
    g[0][0] = Rational(1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 1; k < order; ++k) {
            Rational sum(0);
            const std::size_t mmax = std::min(k, rec.band);
            // L^(0) off-diagonal part
            for (std::size_t m = 1; m <= mmax; ++m) {
                if (g[i][k - m].is_zero()) continue;
                sum += rec.eval(0, m, static_cast<long>(k - m)) * g[i][k - m];
            }
            // lower-index solutions through the log shifts
            for (std::size_t s = 1; s <= i; ++s)
                for (std::size_t m = 0; m <= mmax; ++m) {
                    if (g[i - s][k - m].is_zero()) continue;
                    sum += rec.eval(s, m, static_cast<long>(k - m)) * g[i - s][k - m];
                }
            const Rational diag = rec.lead0 * pow(Rational(static_cast<long>(k)),
                                                  static_cast<long>(n));
            g[i][k] = -(sum / diag);
        }
    }
    std::vector<TruncatedSeries<Rational>> out;
    out.reserve(n);
    for (auto& v : g) out.emplace_back(std::move(v));
    return FrobeniusBasis(op, std::move(out));
}

/// Plain power-series solution F through the given order (same recursion,
/// no logarithmic part).
inline TruncatedSeries<Rational> power_series_solution(const ThetaOperator& op,
                                                       std::size_t order) {
    if (!check_condition_N(op))
        throw std::domain_error("power_series_solution: condition (N) fails");
    const detail::BandedRecursion rec(op);
    const std::size_t n = op.order();
    std::vector<Rational> c(order, Rational(0));
    c[0] = Rational(1);
    for (std::size_t k = 1; k < order; ++k) {
        Rational sum(0);
        const std::size_t mmax = std::min(k, rec.band);
        for (std::size_t m = 1; m <= mmax; ++m) {
            if (c[k - m].is_zero()) continue;
            sum += rec.eval(0, m, static_cast<long>(k - m)) * c[k - m];
        }
        const Rational diag = rec.lead0 * pow(Rational(static_cast<long>(k)),
                                              static_cast<long>(n));
        c[k] = -(sum / diag);
    }
    return TruncatedSeries<Rational>(std::move(c));
}

/// Wronskian wr_i = det(theta^s F_r), 0 <= r,s <= i, computed in
/// K[[t]][log t]; the determinant must be log-free with invertible
/// constant term.
inline TruncatedSeries<Rational> wronskian(const FrobeniusBasis& basis, std::size_t i) {
    if (i >= basis.n()) throw std::out_of_range("wronskian: index exceeds order - 1");
    const std::size_t sz = i + 1;
    std::vector<std::vector<LogSeries<Rational>>> M;
    M.reserve(sz);
    for (std::size_t r = 0; r < sz; ++r) {
        std::vector<LogSeries<Rational>> row;
        row.reserve(sz);
        row.push_back(basis.solution(r));
        for (std::size_t s = 1; s < sz; ++s) row.push_back(row.back().theta());
        M.push_back(std::move(row));
    }
    // Laplace expansion with memoization over row subsets; column index is
    // implied by the subset size.
    const std::uint32_t full = (1u << sz) - 1;
    std::vector<std::optional<LogSeries<Rational>>> memo(full + 1);
    const LogSeries<Rational> one(TruncatedSeries<Rational>::one(Rational(0), basis.order()));
    const auto det = [&](auto&& self, std::uint32_t mask) -> LogSeries<Rational> {
        if (mask == 0) return one;
        if (memo[mask]) return *memo[mask];
        std::uint32_t count = 0;
        for (std::uint32_t m = mask; m; m &= m - 1) ++count;
        const std::size_t col = count - 1;
        LogSeries<Rational> acc(TruncatedSeries<Rational>::zero(Rational(0), basis.order()));
        std::size_t pos = 0;
        for (std::size_t r = 0; r < sz; ++r) {
            if (!(mask & (1u << r))) continue;
            auto term = M[r][col] * self(self, mask & ~(1u << r));
            if ((pos + col) % 2 == 1) term = -term;
            acc = acc + term;
            ++pos;
        }
        memo[mask] = acc;
        return acc;
    };
    const LogSeries<Rational> d = det(det, full);
    if (!d.is_log_free())
        throw std::logic_error("wronskian: logarithmic terms failed to cancel");
    const auto w = d.component(0);
    if (w.coeff(0).is_zero())
        throw std::domain_error("wronskian: not invertible at the origin");
    return w;
}

/// q = t exp(g_1/g_0), an element of t + t^2 K[[t]].
inline TruncatedSeries<Rational> q_coordinate(const FrobeniusBasis& basis) {
    if (basis.n() < 2) throw std::invalid_argument("q_coordinate: order must be >= 2");
    return series_exp(basis.g(1) / basis.g(0)).shifted_up(1);
}

/// Inverse of the q-coordinate: t as a series in q.
inline TruncatedSeries<Rational> mirror_inverse(const TruncatedSeries<Rational>& q) {
    return series_reverse(q);
}

/// theta(log q) = theta(g_1/g_0) + 1.
inline TruncatedSeries<Rational> theta_log_q(const FrobeniusBasis& basis) {
    if (basis.n() < 2) throw std::invalid_argument("theta_log_q: order must be >= 2");
    auto w = theta_derive(basis.g(1) / basis.g(0));
    w.set_coeff(0, w.coeff(0) + Rational(1));
    return w;
}

/// tau_{i+1} = wr_{i-1} wr_{i+1} / wr_i^2 (with wr_{-1} = 1), for
/// 1 <= i+1 <= n-1.
inline std::vector<TruncatedSeries<Rational>> tau_sequence(const FrobeniusBasis& basis) {
    const std::size_t n = basis.n();
    std::vector<TruncatedSeries<Rational>> wr;
    wr.reserve(n);
    for (std::size_t i = 0; i < n; ++i) wr.push_back(wronskian(basis, i));
    const auto one = TruncatedSeries<Rational>::one(Rational(0), basis.order());
    std::vector<TruncatedSeries<Rational>> tau;
    tau.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& prev = i == 0 ? one : wr[i - 1];
        tau.push_back(prev * wr[i + 1] / (wr[i] * wr[i]));
    }
    return tau;
}

/// Yukawa coupling of an order-4 operator as a series in t:
/// (q d/dq)^2 (F_2/F) pulled back through q(t).
inline TruncatedSeries<Rational> yukawa_kappa_in_t(const FrobeniusBasis& basis) {
    if (basis.n() != 4) throw std::invalid_argument("yukawa: order must be 4");
    const auto h1 = basis.g(1) / basis.g(0);
    const auto h2 = basis.g(2) / basis.g(0);
    const auto w = theta_log_q(basis);
    auto inner = theta_derive((theta_derive(h2) + h1) / w);
    inner.set_coeff(0, inner.coeff(0) + Rational(1));
    return inner / w;
}

/// Yukawa coupling in the q variable, kappa(0) = 1.
inline TruncatedSeries<Rational> yukawa_kappa(const FrobeniusBasis& basis) {
    const auto kt = yukawa_kappa_in_t(basis);
    const auto t_of_q = mirror_inverse(q_coordinate(basis));
    return series_compose(kt, t_of_q);
}

/// Element of the lattice Lambda_L in coordinates sum_r v_r eta^(r).
class LambdaElement {
  public:
    explicit LambdaElement(std::vector<TruncatedSeries<Rational>> v) : v_(std::move(v)) {
        if (v_.empty()) throw std::invalid_argument("lambda element: empty coordinates");
    }
    std::size_t n() const { return v_.size(); }
    std::size_t order() const { return v_[0].order(); }
    const TruncatedSeries<Rational>& coord(std::size_t r) const { return v_.at(r); }

    bool is_zero() const {
        for (const auto& c : v_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend LambdaElement operator+(const LambdaElement& a, const LambdaElement& b) {
        if (a.n() != b.n()) throw std::invalid_argument("lambda element: rank mismatch");
        std::vector<TruncatedSeries<Rational>> v;
        v.reserve(a.n());
        for (std::size_t r = 0; r < a.n(); ++r) v.push_back(a.v_[r] + b.v_[r]);
        return LambdaElement(std::move(v));
    }
    friend LambdaElement operator-(const LambdaElement& a, const LambdaElement& b) {
        if (a.n() != b.n()) throw std::invalid_argument("lambda element: rank mismatch");
        std::vector<TruncatedSeries<Rational>> v;
        v.reserve(a.n());
        for (std::size_t r = 0; r < a.n(); ++r) v.push_back(a.v_[r] - b.v_[r]);
        return LambdaElement(std::move(v));
    }
    LambdaElement scaled_by(const TruncatedSeries<Rational>& s) const {
        std::vector<TruncatedSeries<Rational>> v;
        v.reserve(n());
        for (const auto& c : v_) v.push_back(c * s);
        return LambdaElement(std::move(v));
    }

  private:
    std::vector<TruncatedSeries<Rational>> v_;
};

/// The differential module M_L over truncated series: theta action with
/// eta^(n) reduced through L, and the polarization pairing normalized by
/// <eta, eta^(n-1)> = 1/beta.
class DifferentialModule {
  public:
    DifferentialModule(const ThetaOperator& op, std::size_t order)
        : n_(op.order()), order_(order) {
        if (!check_condition_N(op))
            throw std::domain_error("differential module: condition (N) fails");
        a_.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) a_.push_back(expand_at_zero(op.a(i), order));
        beta_ = beta_rational(op);
    }

    std::size_t n() const { return n_; }
    std::size_t order() const { return order_; }
    bool has_pairing() const { return beta_.has_value(); }
    const std::optional<RationalFunction<Rational>>& beta() const { return beta_; }

    TruncatedSeries<Rational> zero_series() const {
        return TruncatedSeries<Rational>::zero(Rational(0), order_);
    }
    TruncatedSeries<Rational> one_series() const {
        return TruncatedSeries<Rational>::one(Rational(0), order_);
    }

    LambdaElement zero_element() const {
        return LambdaElement(std::vector<TruncatedSeries<Rational>>(n_, zero_series()));
    }

    /// Basis vector eta^(r).
    LambdaElement eta(std::size_t r) const {
        if (r >= n_) throw std::out_of_range("eta: index");
        std::vector<TruncatedSeries<Rational>> v(n_, zero_series());
        v[r] = one_series();
        return LambdaElement(std::move(v));
    }

    LambdaElement theta(const LambdaElement& x) const {
        if (x.n() != n_) throw std::invalid_argument("theta: rank mismatch");
        std::vector<TruncatedSeries<Rational>> v;
        v.reserve(n_);
        const auto& top = x.coord(n_ - 1);
        for (std::size_t s = 0; s < n_; ++s) {
            auto c = theta_derive(x.coord(s));
            if (s >= 1) c = c + x.coord(s - 1);
            c = c - a_[s] * top;
            v.push_back(std::move(c));
        }
        return LambdaElement(std::move(v));
    }

    /// <x, y> via the table <eta^(i), eta^(j)> extended bilinearly.
    TruncatedSeries<Rational> pairing(const LambdaElement& x, const LambdaElement& y) const {
        ensure_table();
        auto acc = zero_series();
        for (std::size_t r = 0; r < n_; ++r) {
            if (x.coord(r).is_zero()) continue;
            for (std::size_t s = 0; s < n_; ++s) {
                if (y.coord(s).is_zero()) continue;
                acc = acc + x.coord(r) * y.coord(s) * table_[r][s];
            }
        }
        return acc;
    }

  private:
    void ensure_table() const {
        if (!table_.empty()) return;
        if (!beta_)
            throw std::domain_error("pairing: beta-factor is not rational (operator not Calabi-Yau)");
        // gamma = beta^{-1}; column 0 from the parity table, then
        // <eta^(i), eta^(j+1)> = theta<eta^(i), eta^(j)> - <eta^(i+1), eta^(j)>.
        const auto gamma = expand_at_zero(beta_->inverse(), order_);
        std::vector<std::vector<TruncatedSeries<Rational>>> t(
            n_ + 1, std::vector<TruncatedSeries<Rational>>(n_, zero_series()));
        t[n_ - 1][0] = n_ % 2 == 0 ? -gamma : gamma; // (-1)^(n-1) gamma
        t[n_][0] = reduce_row(t, 0);
        for (std::size_t j = 0; j + 1 < n_; ++j) {
            for (std::size_t i = 0; i < n_; ++i)
                t[i][j + 1] = theta_derive(t[i][j]) - t[i + 1][j];
            t[n_][j + 1] = reduce_row(t, j + 1);
        }
        table_ = std::move(t);
    }

    TruncatedSeries<Rational> reduce_row(
        const std::vector<std::vector<TruncatedSeries<Rational>>>& t, std::size_t j) const {
        auto acc = zero_series();
        for (std::size_t s = 0; s < n_; ++s) acc = acc - a_[s] * t[s][j];
        return acc;
    }

    std::size_t n_;
    std::size_t order_;
    std::vector<TruncatedSeries<Rational>> a_;
    std::optional<RationalFunction<Rational>> beta_;
    mutable std::vector<std::vector<TruncatedSeries<Rational>>> table_;
};

/// The u-basis of Thm-basis type: theta u_0 = 0, theta u_{i+1} = tau_{i+1} u_i,
/// top coordinates pinned by v_{i,n-1-i} = beta wr_i / wr_{i-1}.
struct UBasis {
    std::vector<LambdaElement> u;
    std::vector<TruncatedSeries<Rational>> tau;
};

inline UBasis u_basis(const ThetaOperator& op, std::size_t order = 64) {
    const DifferentialModule mod(op, order);
    if (!mod.beta())
        throw std::domain_error("u_basis: beta-factor not rational (operator not Calabi-Yau)");
    const std::size_t n = op.order();
    const auto basis = frobenius_basis(op, order);
    const auto beta = expand_at_zero(*mod.beta(), order);
    std::vector<TruncatedSeries<Rational>> wr;
    wr.reserve(n);
    for (std::size_t i = 0; i < n; ++i) wr.push_back(wronskian(basis, i));
    const auto tau = tau_sequence(basis);

    std::vector<TruncatedSeries<Rational>> a;
    a.reserve(n);
    for (std::size_t i = 0; i < n; ++i) a.push_back(expand_at_zero(op.a(i), order));

    std::vector<LambdaElement> u;
    u.reserve(n);
    {
        // u_0: descending recursion seeded by v_{0,n-1} = beta F
        std::vector<TruncatedSeries<Rational>> v(n, mod.zero_series());
        v[n - 1] = beta * basis.F();
        for (std::size_t r = n - 1; r >= 1; --r) v[r - 1] = a[r] * v[n - 1] - theta_derive(v[r]);
        if (!(theta_derive(v[0]) - a[0] * v[n - 1]).is_zero())
            throw std::logic_error("u_basis: horizontality of u_0 fails (operator not Calabi-Yau?)");
        u.emplace_back(std::move(v));
    }
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<TruncatedSeries<Rational>> v(n, mod.zero_series());
        const std::size_t top = n - 1 - i;
        v[top] = beta * wr[i] / wr[i - 1];
        for (std::size_t r = top; r >= 1; --r)
            v[r - 1] = tau[i - 1] * u[i - 1].coord(r) - theta_derive(v[r]);
        if (!(theta_derive(v[0]) - tau[i - 1] * u[i - 1].coord(0)).is_zero())
            throw std::logic_error("u_basis: recursion consistency fails (operator not Calabi-Yau?)");
        u.emplace_back(std::move(v));
    }
    return UBasis{std::move(u), tau};
}

/// <u_i, u_{n-1-i}>: checks the pairings are nonzero constants and the
/// cross pairings vanish; returns the constants.
inline std::vector<Rational> pairing_constants(const ThetaOperator& op, const UBasis& ub,
                                               std::size_t order = 64) {
    const DifferentialModule mod(op, order);
    const std::size_t n = op.order();
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto p = mod.pairing(ub.u[i], ub.u[j]);
            if (i + j == n - 1) {
                for (std::size_t k = 1; k < p.order(); ++k)
                    if (!p.coeff(k).is_zero())
                        throw std::logic_error("pairing_constants: <u_i, u_{m-i}> not constant");
                if (p.coeff(0).is_zero())
                    throw std::logic_error("pairing_constants: <u_i, u_{m-i}> vanishes");
                out.push_back(p.coeff(0));
            } else if (!p.is_zero()) {
                throw std::logic_error("pairing_constants: cross pairing does not vanish");
            }
        }
    }
    return out;
}

} // namespace cyode
