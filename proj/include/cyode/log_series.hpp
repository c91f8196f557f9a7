#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "series.hpp"

namespace cyode {

/// Element of K[[t]][log t], stored as components g_j with the value
/// sum_j g_j(t) * (log t)^j / j!.  theta acts componentwise plus a shift:
/// (theta y)_j = theta(g_j) + g_{j+1}.
template <CoefficientRing R>
class LogSeries {
  public:
    explicit LogSeries(std::vector<TruncatedSeries<R>> components)
        : g_(std::move(components)) {
        if (g_.empty()) throw std::invalid_argument("log series: needs at least one component");
    }
    explicit LogSeries(TruncatedSeries<R> plain) : g_{std::move(plain)} {}

    std::size_t log_degree() const { return g_.size() - 1; }
    std::size_t order() const { return g_[0].order(); }
    const TruncatedSeries<R>& component(std::size_t j) const { return g_.at(j); }

    /// Component j, or the zero series when j exceeds the log degree.
    TruncatedSeries<R> component_or_zero(std::size_t j) const {
        if (j < g_.size()) return g_[j];
        return TruncatedSeries<R>::zero(g_[0].exemplar(), order());
    }

    bool is_zero() const {
        for (const auto& c : g_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_log_free() const {
        for (std::size_t j = 1; j < g_.size(); ++j)
            if (!g_[j].is_zero()) return false;
        return true;
    }

    LogSeries theta() const {
        std::vector<TruncatedSeries<R>> v;
        v.reserve(g_.size());
        for (std::size_t j = 0; j < g_.size(); ++j) {
            auto c = theta_derive(g_[j]);
            if (j + 1 < g_.size()) c = c + g_[j + 1];
            v.push_back(std::move(c));
        }
        return LogSeries(std::move(v));
    }

    friend LogSeries operator+(const LogSeries& a, const LogSeries& b) {
        const std::size_t d = std::max(a.g_.size(), b.g_.size());
        std::vector<TruncatedSeries<R>> v;
        v.reserve(d);
        for (std::size_t j = 0; j < d; ++j)
            v.push_back(a.component_or_zero(j) + b.component_or_zero(j));
        return LogSeries(std::move(v));
    }
    friend LogSeries operator-(const LogSeries& a, const LogSeries& b) {
        const std::size_t d = std::max(a.g_.size(), b.g_.size());
        std::vector<TruncatedSeries<R>> v;
        v.reserve(d);
        for (std::size_t j = 0; j < d; ++j)
            v.push_back(a.component_or_zero(j) - b.component_or_zero(j));
        return LogSeries(std::move(v));
    }
    LogSeries operator-() const {
        std::vector<TruncatedSeries<R>> v;
        v.reserve(g_.size());
        for (const auto& c : g_) v.push_back(-c);
        return LogSeries(std::move(v));
    }

    /// Product with a plain series (componentwise).
    LogSeries scaled_by(const TruncatedSeries<R>& s) const {
        std::vector<TruncatedSeries<R>> v;
        v.reserve(g_.size());
        for (const auto& c : g_) v.push_back(c * s);
        return LogSeries(std::move(v));
    }

    /// Division by a unit plain series (componentwise).
    LogSeries divided_by(const TruncatedSeries<R>& s) const { return scaled_by(s.inverse()); }

    /// Full product: (L^a/a!)(L^b/b!) = binom(a+b, a) L^(a+b)/(a+b)!.
    friend LogSeries operator*(const LogSeries& a, const LogSeries& b) {
        const R z = a.g_[0].exemplar();
        const std::size_t ord = std::min(a.order(), b.order());
        const std::size_t d = a.log_degree() + b.log_degree();
        std::vector<TruncatedSeries<R>> v(d + 1, TruncatedSeries<R>::zero(z, ord));
        // binomial table up to d
        std::vector<std::vector<R>> binom(d + 1, std::vector<R>(d + 1, z));
        for (std::size_t i = 0; i <= d; ++i) {
            binom[i][0] = z.one();
            for (std::size_t j = 1; j <= i; ++j)
                binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : z);
        }
        for (std::size_t i = 0; i <= a.log_degree(); ++i)
            for (std::size_t j = 0; j <= b.log_degree(); ++j) {
                if (a.g_[i].is_zero() || b.g_[j].is_zero()) continue;
                v[i + j] = v[i + j] + (a.g_[i] * b.g_[j]).truncated(ord).scaled(binom[i + j][i]);
            }
        return LogSeries(std::move(v));
    }

    friend bool operator==(const LogSeries& a, const LogSeries& b) { return (a - b).is_zero(); }

    /// Drops top zero components.
    LogSeries normalized() const {
        std::size_t top = g_.size();
        while (top > 1 && g_[top - 1].is_zero()) --top;
        return LogSeries(std::vector<TruncatedSeries<R>>(g_.begin(), g_.begin() + top));
    }

  private:
    std::vector<TruncatedSeries<R>> g_;
};

} // namespace cyode
