#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frobenius.hpp"
#include "series.hpp"
#include "theta_operator.hpp"

namespace cyode {

/// Symmetric square of an order-2 operator: order 3 with
/// b2 = 3 a1, b1 = 4 a0 + a1' + 2 a1^2, b0 = 2 a0' + 4 a0 a1.
/// (b0 is pinned by requiring that products of solutions are annihilated;
/// it is also the version consistent with the order-3 self-adjointness
/// relation.)
inline ThetaOperator sym_square(const ThetaOperator& op) {
    if (op.order() != 2) throw std::invalid_argument("sym_square: order must be 2");
    const auto a0 = op.a(0), a1 = op.a(1);
    const auto b2 = a1.scaled_by_int(3);
    const auto b1 = a0.scaled_by_int(4) + a1.theta() + (a1 * a1).scaled_by_int(2);
    const auto b0 = a0.theta().scaled_by_int(2) + (a0 * a1).scaled_by_int(4);
    return ThetaOperator(ThetaPoly<Rational>({b0, b1, b2, a1.one()}));
}

/// Inverse of sym_square: recovers (a1, a0) from (b2, b1) and verifies the
/// third relation b0 = 2 a0' + 4 a0 a1, which holds exactly when the input
/// is a symmetric square (equivalently, is Calabi-Yau of order 3).
inline std::optional<ThetaOperator> sym_square_inverse(const ThetaOperator& op) {
    if (op.order() != 3) throw std::invalid_argument("sym_square_inverse: order must be 3");
    const auto b0 = op.a(0), b1 = op.a(1), b2 = op.a(2);
    const auto third = RationalFunction<Rational>(Rational(1, 3));
    const auto quarter = RationalFunction<Rational>(Rational(1, 4));
    const auto a1 = third * b2;
    const auto a0 = quarter * (b1 - a1.theta() - (a1 * a1).scaled_by_int(2));
    if (b0 != a0.theta().scaled_by_int(2) + (a0 * a1).scaled_by_int(4)) return std::nullopt;
    return ThetaOperator(ThetaPoly<Rational>({a0, a1, a1.one()}));
}

/// Exterior square of a Calabi-Yau order-4 operator (order 5).  Refused
/// for non-self-adjoint input, where the construction would collapse.
inline ThetaOperator ext_square(const ThetaOperator& op) {
    if (op.order() != 4) throw std::invalid_argument("ext_square: order must be 4");
    if (relation_check_order4(op) != Verdict::yes)
        throw std::domain_error("ext_square: operator is not self-adjoint");
    const auto a0 = op.a(0), a1 = op.a(1), a2 = op.a(2), a3 = op.a(3);
    const auto c = [](long num, long den) {
        return RationalFunction<Rational>(Rational(num, den));
    };
    const auto v4 = c(5, 2) * a3;
    const auto v3 = a2.scaled_by_int(2) + a3.theta().scaled_by_int(2) + c(7, 4) * a3 * a3;
    const auto v2 = -a1 + a2.theta().scaled_by_int(4) + c(7, 2) * a2 * a3;
    const auto v1 = -(a0.scaled_by_int(4)) + a1.theta().scaled_by_int(2) + a2 * a2 +
                    a2.theta().theta() + c(3, 2) * a1 * a3 + c(3, 2) * a2.theta() * a3 +
                    c(1, 4) * a2 * a3 * a3;
    const auto v0 = -(a0.theta().scaled_by_int(2)) + a1.theta().theta() -
                    (a0 * a3).scaled_by_int(2) + a1 * a2 + c(3, 2) * a1.theta() * a3 +
                    c(1, 4) * a1 * a3 * a3;
    return ThetaOperator(ThetaPoly<Rational>({v0, v1, v2, v3, v4, a0.one()}));
}

/// Inverse of ext_square: solves the first four coefficient formulas for
/// a3..a0, then verifies the fifth formula and the order-4 self-adjointness
/// relation.
inline std::optional<ThetaOperator> ext_square_inverse(const ThetaOperator& op) {
    if (op.order() != 5) throw std::invalid_argument("ext_square_inverse: order must be 5");
    const auto v0 = op.a(0), v1 = op.a(1), v2 = op.a(2), v3 = op.a(3), v4 = op.a(4);
    const auto c = [](long num, long den) {
        return RationalFunction<Rational>(Rational(num, den));
    };
    const auto a3 = c(2, 5) * v4;
    const auto a2 = c(1, 2) * (v3 - a3.theta().scaled_by_int(2) - c(7, 4) * a3 * a3);
    const auto a1 = a2.theta().scaled_by_int(4) + c(7, 2) * a2 * a3 - v2;
    const auto a0 = c(1, 4) * (a1.theta().scaled_by_int(2) + a2 * a2 + a2.theta().theta() +
                               c(3, 2) * a1 * a3 + c(3, 2) * a2.theta() * a3 +
                               c(1, 4) * a2 * a3 * a3 - v1);
    const auto v0_check = -(a0.theta().scaled_by_int(2)) + a1.theta().theta() -
                          (a0 * a3).scaled_by_int(2) + a1 * a2 + c(3, 2) * a1.theta() * a3 +
                          c(1, 4) * a1 * a3 * a3;
    if (v0 != v0_check) return std::nullopt;
    const ThetaOperator cand(ThetaPoly<Rational>({a0, a1, a2, a3, a0.one()}));
    if (relation_check_order4(cand) != Verdict::yes) return std::nullopt;
    return cand;
}

/// d log q-check = kappa d log q, as series through the given order:
/// the q-coordinate of the exterior square against the Yukawa coupling.
inline bool check_qcheck_relation(const ThetaOperator& op, std::size_t order = 32) {
    if (op.order() != 4) throw std::invalid_argument("check_qcheck_relation: order must be 4");
    const std::size_t n = order + 2;
    const auto basis = frobenius_basis(op, n);
    const auto ext = ext_square(op);
    const auto ext_basis = frobenius_basis(ext, n);
    const auto lhs = theta_log_q(ext_basis);
    const auto rhs = yukawa_kappa_in_t(basis) * theta_log_q(basis);
    return lhs.agrees_with(rhs, order);
}

/// sum p_i(t) theta^i applied with polynomial coefficients (no truncation
/// effects beyond the series order).
inline TruncatedSeries<Rational> apply_poly_form(const ThetaOperator& op,
                                                 const TruncatedSeries<Rational>& f) {
    const auto P = op.polynomial_form();
    auto acc = TruncatedSeries<Rational>::zero(Rational(0), f.order());
    auto power = f;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (!P[i].is_zero())
            acc = acc + TruncatedSeries<Rational>::from_poly(P[i], Rational(0), f.order()) * power;
        if (i + 1 < P.size()) power = theta_derive(power);
    }
    return acc;
}

/// Least-order annihilator sum_{i<=r} p_i(t) theta^i with deg p_i <= d,
/// found by exact nullspace computation; deterministic tie-break: least
/// order, then least degree, then the first reduced-echelon basis vector.
/// The result is re-verified against every available coefficient.
inline std::optional<ThetaOperator> minimal_annihilator(const TruncatedSeries<Rational>& f,
                                                        std::size_t rmax, std::size_t dmax,
                                                        std::size_t margin = 8) {
    const std::size_t need = (rmax + 1) * (dmax + 1) + rmax + margin;
    if (f.order() < need)
        throw std::invalid_argument("minimal_annihilator: series order " +
                                    std::to_string(f.order()) + " below required " +
                                    std::to_string(need));
    const std::size_t rows_all = f.order();

    for (std::size_t r = 1; r <= rmax; ++r) {
        for (std::size_t d = 0; d <= dmax; ++d) {
            const std::size_t cols = (r + 1) * (d + 1);
            if (cols + r + margin > f.order()) continue;
            // unknowns p_{i,m} ordered by (i, m); equation per output degree k:
            // sum_{i,m} p_{i,m} (k-m)^i c_{k-m} = 0
            std::vector<std::vector<Rational>> M(rows_all,
                                                 std::vector<Rational>(cols, Rational(0)));
            for (std::size_t k = 0; k < rows_all; ++k) {
                for (std::size_t i = 0; i <= r; ++i)
                    for (std::size_t m = 0; m <= d; ++m) {
                        if (m > k) continue;
                        const long x = static_cast<long>(k - m);
                        M[k][i * (d + 1) + m] =
                            pow(Rational(x), static_cast<long>(i)) * f.coeff(k - m);
                    }
            }
            // reduced row echelon over Q
            std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
            std::size_t rank = 0;
            for (std::size_t c = 0; c < cols && rank < rows_all; ++c) {
                std::size_t sel = SIZE_MAX;
                for (std::size_t row = rank; row < rows_all; ++row)
                    if (!M[row][c].is_zero()) { sel = row; break; }
                if (sel == SIZE_MAX) continue;
                std::swap(M[rank], M[sel]);
                const Rational inv = M[rank][c].inverse();
                for (std::size_t cc = c; cc < cols; ++cc) M[rank][cc] *= inv;
                for (std::size_t row = 0; row < rows_all; ++row) {
                    if (row == rank || M[row][c].is_zero()) continue;
                    const Rational factor = M[row][c];
                    for (std::size_t cc = c; cc < cols; ++cc)
                        M[row][cc] -= factor * M[rank][cc];
                }
                pivot_of_col[c] = rank;
                ++rank;
            }
            if (rank == cols) continue; // only the trivial solution
            // first free column gives the canonical nullspace vector
            std::size_t free_col = 0;
            while (pivot_of_col[free_col] != SIZE_MAX) ++free_col;
            std::vector<Rational> sol(cols, Rational(0));
            sol[free_col] = Rational(1);
            for (std::size_t c = 0; c < cols; ++c) {
                if (pivot_of_col[c] == SIZE_MAX) continue;
                sol[c] = -M[pivot_of_col[c]][free_col];
            }
            std::vector<RationalFunction<Rational>> coeffs;
            coeffs.reserve(r + 1);
            bool top_nonzero = false;
            for (std::size_t i = 0; i <= r; ++i) {
                std::vector<Rational> pc(sol.begin() + static_cast<long>(i * (d + 1)),
                                         sol.begin() + static_cast<long>((i + 1) * (d + 1)));
                DensePolynomial<Rational> p(std::move(pc));
                if (i == r) top_nonzero = !p.is_zero();
                coeffs.emplace_back(std::move(p), Rational(0));
            }
            if (!top_nonzero) continue; // actual order below r: found earlier or spurious
            const ThetaOperator cand((ThetaPoly<Rational>(std::move(coeffs))));
            // certificate: the raw form annihilates every available coefficient
            if (!apply_poly_form(cand, f).is_zero()) continue;
            return cand;
        }
    }
    return std::nullopt;
}

} // namespace cyode
