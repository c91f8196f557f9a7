#pragma once

#include <optional>
#include <utility>

#include "rational_function.hpp"
#include "series.hpp"

namespace cyode {

/// Rational-function reconstruction from a truncated series.
///
/// Finds P/Q with deg P <= dnum, deg Q <= dden, Q(0) != 0 whose expansion
/// reproduces *every* available coefficient of f, or reports that no such
/// function exists within the bounds.  The candidate comes from the
/// extended Euclidean algorithm on (t^(dnum+dden+1), f); the re-expansion
/// check makes the result a certificate rather than a guess.
template <CoefficientRing R>
std::optional<RationalFunction<R>> pade_reconstruct(const TruncatedSeries<R>& f,
                                                    std::size_t dnum, std::size_t dden) {
    using Poly = DensePolynomial<R>;
    const R ex = f.coeff(0).zero();
    if (f.order() < dnum + dden + 2)
        throw std::invalid_argument("pade_reconstruct: truncation order too small for the bounds");

    const auto verify = [&](const RationalFunction<R>& cand) -> bool {
        if (cand.numerator().degree() > static_cast<long>(dnum)) return false;
        if (cand.denominator().degree() > static_cast<long>(dden)) return false;
        if (cand.has_pole_at_zero()) return false;
        return expand_at_zero(cand, f.order()).agrees_with(f, f.order());
    };

    if (f.is_zero()) return RationalFunction<R>(Poly(), ex);

    const std::size_t m = dnum + dden + 1;
    Poly r0 = Poly::monomial(ex.one(), m);
    Poly r1 = f.to_poly(std::min(m, f.order()));
    Poly s0 = Poly();
    Poly s1 = Poly(ex.one());
    while (!r1.is_zero() && r1.degree() > static_cast<long>(dnum)) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (s1.is_zero()) return std::nullopt;
    RationalFunction<R> cand(r1, s1);
    if (!verify(cand)) return std::nullopt;
    return cand;
}

} // namespace cyode
