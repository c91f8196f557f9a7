#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobenius.hpp"
#include "pade.hpp"
#include "series.hpp"
#include "theta_operator.hpp"
#include "zmod.hpp"

namespace cyode {

using ModpSeries = TruncatedSeries<Fp>;

// ---------------------------------------------------------------------------
// reductions

inline DensePolynomial<Fp> reduce_poly(const DensePolynomial<Rational>& p, std::int64_t prime) {
    std::vector<Fp> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(reduce_mod_p(c, prime));
    return DensePolynomial<Fp>(std::move(v));
}

inline RationalFunction<Fp> reduce_rf(const RationalFunction<Rational>& f, std::int64_t prime) {
    auto den = reduce_poly(f.denominator(), prime);
    if (den.is_zero())
        throw std::domain_error("reduce_rf: denominator vanishes mod " + std::to_string(prime));
    return RationalFunction<Fp>(reduce_poly(f.numerator(), prime), std::move(den));
}

inline ThetaPoly<Fp> reduce_op(const ThetaOperator& op, std::int64_t prime) {
    std::vector<RationalFunction<Fp>> v;
    v.reserve(op.order() + 1);
    for (const auto& c : op.monic_poly().coeffs()) v.push_back(reduce_rf(c, prime));
    return ThetaPoly<Fp>(std::move(v));
}

inline TruncatedSeries<Fp> reduce_series(const TruncatedSeries<Rational>& f, std::int64_t prime) {
    std::vector<Fp> v;
    v.reserve(f.order());
    for (const auto& c : f.coeffs()) v.push_back(reduce_mod_p(c, prime));
    return TruncatedSeries<Fp>(std::move(v));
}

// ---------------------------------------------------------------------------
// the solution F modulo p^s

/// Computes F mod p^s through the given order by running the exact
/// denominator-cleared recursion and reducing each coefficient; only a
/// window of exact coefficients is kept.  Errors when some coefficient
/// denominator is divisible by p (bad prime).
inline TruncatedSeries<Zps> f_series_mod(const ThetaOperator& op, std::int64_t p, unsigned s,
                                         std::size_t order) {
    if (!check_condition_N(op))
        throw std::domain_error("f_series_mod: condition (N) fails");
    if (!detail::is_prime_small(p)) throw std::invalid_argument("f_series_mod: p is not prime");
    if (p <= static_cast<std::int64_t>(op.order()))
        throw std::domain_error("f_series_mod: prime must exceed the order");
    const detail::BandedRecursion rec(op);
    const std::size_t n = op.order();
    const std::size_t window = rec.band == 0 ? 1 : rec.band;
    std::vector<Rational> ring(window, Rational(0)); // the last `window` exact coefficients
    std::vector<Zps> out;
    out.reserve(order);
    const Rational c0(1);
    out.emplace_back(reduce_mod(c0, p, s));
    ring[0] = c0;
    for (std::size_t k = 1; k < order; ++k) {
        Rational sum(0);
        const std::size_t mmax = std::min(k, rec.band);
        for (std::size_t m = 1; m <= mmax; ++m) {
            const Rational& c = ring[(k - m) % window];
            if (c.is_zero()) continue;
            sum += rec.eval(0, m, static_cast<long>(k - m)) * c;
        }
        const Rational diag =
            rec.lead0 * pow(Rational(static_cast<long>(k)), static_cast<long>(n));
        const Rational ck = -(sum / diag);
        out.emplace_back(reduce_mod(ck, p, s));
        ring[k % window] = ck;
    }
    return TruncatedSeries<Zps>(std::move(out));
}

inline TruncatedSeries<Fp> f_series_mod_p(const ThetaOperator& op, std::int64_t p,
                                          std::size_t order) {
    const auto zs = f_series_mod(op, p, 1, order);
    std::vector<Fp> v;
    v.reserve(order);
    for (const auto& c : zs.coeffs()) v.push_back(Fp(c.value(), p));
    return TruncatedSeries<Fp>(std::move(v));
}

/// Good prime: p prime, p > order, and neither the operator coefficients
/// nor F up to the given order meet p in a denominator.
inline bool is_good_prime(const ThetaOperator& op, std::int64_t p, std::size_t order) {
    if (!detail::is_prime_small(p) || p <= static_cast<std::int64_t>(op.order())) return false;
    try {
        reduce_op(op, p);
        f_series_mod(op, p, 1, order);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

/// Truncation below degree M as a polynomial.
template <CoefficientRing R>
DensePolynomial<R> truncate(const TruncatedSeries<R>& f, std::size_t below) {
    return f.to_poly(below);
}

// ---------------------------------------------------------------------------
// Hasse invariant

/// The canonical Hasse candidate F^{<p} mod p (the invariant equals
/// c * F^{<p} for a geometric constant c that the operator alone does not
/// determine).
struct HasseReport {
    std::int64_t p = 0;
    DensePolynomial<Fp> hasse;
    long degree = -1;
    bool simple_roots = false;
    bool constant_unit = false;
    /// whether L(F^{<p}) vanishes identically mod p (not just below degree p)
    bool exact_solution = false;
};

inline HasseReport hasse_candidate(const ThetaOperator& op, std::int64_t p) {
    const auto fmod = f_series_mod_p(op, p, static_cast<std::size_t>(p));
    HasseReport rep;
    rep.p = p;
    rep.hasse = truncate(fmod, static_cast<std::size_t>(p));
    rep.degree = rep.hasse.degree();
    rep.constant_unit = !rep.hasse.coeff(0, Fp(0, p)).is_zero();
    rep.simple_roots = !rep.hasse.is_zero() && poly_is_squarefree(rep.hasse);

    // polynomial solution check: apply the denominator-cleared operator
    const auto P = op.polynomial_form();
    long maxdeg = 0;
    DensePolynomial<Fp> acc;
    DensePolynomial<Fp> power = rep.hasse;
    for (std::size_t i = 0; i < P.size(); ++i) {
        maxdeg = std::max(maxdeg, P[i].degree());
        acc = acc + reduce_poly(P[i], p) * power;
        if (i + 1 < P.size()) power = power.theta();
    }
    rep.exact_solution = acc.is_zero();
    // truncation effects cannot reach below degree p - maxdeg
    for (long k = 0; k < p - maxdeg && k <= acc.degree(); ++k)
        if (!acc.coeff(static_cast<std::size_t>(k), Fp(0, p)).is_zero())
            throw std::logic_error("hasse_candidate: truncation-free degrees fail to vanish");
    return rep;
}

// ---------------------------------------------------------------------------
// Frobenius ratio f-bar = F(t)/F(t^p) and its rationality

/// Substitution t -> t^p by coefficient spreading.
template <CoefficientRing R>
TruncatedSeries<R> spread(const TruncatedSeries<R>& f, std::size_t p) {
    auto out = TruncatedSeries<R>::zero(f.exemplar(), f.order());
    for (std::size_t k = 0; k * p < f.order(); ++k) out.set_coeff(k * p, f.coeff(k));
    return out;
}

/// Reconstructs f-bar = F/F^sigma mod p as a rational function with both
/// degrees bounded by dmax, then verifies:  L f-bar = 0 over F_p(t), and
/// f-bar = F^{<p} as series below degree p.
inline RationalFunction<Fp> frobenius_ratio_rational(const ThetaOperator& op, std::int64_t p,
                                                     std::size_t dmax) {
    const std::size_t order = std::max<std::size_t>(2 * (dmax + 1) + static_cast<std::size_t>(p),
                                                    static_cast<std::size_t>(p) + 2);
    const auto fmod = f_series_mod_p(op, p, order);
    const auto ratio = fmod / spread(fmod, static_cast<std::size_t>(p));
    const auto cand = pade_reconstruct(ratio, dmax, dmax);
    if (!cand)
        throw std::domain_error("frobenius_ratio_rational: no rational function within bounds");

    // f-bar must solve L mod p as a rational function
    const auto opp = reduce_op(op, p);
    auto acc = cand->zero();
    auto der = *cand;
    for (long i = 0; i <= opp.order(); ++i) {
        const auto& c = opp.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) acc = acc + c * der;
        if (i < opp.order()) der = der.theta();
    }
    if (!acc.is_zero())
        throw std::domain_error("frobenius_ratio_rational: candidate does not solve L mod p");

    // and agree with the Hasse candidate below degree p
    if (!expand_at_zero(*cand, static_cast<std::size_t>(p))
             .agrees_with(fmod.truncated(static_cast<std::size_t>(p)), static_cast<std::size_t>(p)))
        throw std::domain_error("frobenius_ratio_rational: disagrees with F^{<p}");
    return *cand;
}

// ---------------------------------------------------------------------------
// Dwork congruence

/// F^{<p^s}(t) F^{<p^s}(t^p) = F^{<p^{s+1}}(t) F^{<p^{s-1}}(t^p) mod p^s,
/// coefficientwise through the given order (cross-multiplied form, so no
/// division in Z/p^s is needed).
inline bool dwork_congruence_check(const ThetaOperator& op, std::int64_t p, unsigned s,
                                   std::size_t order) {
    const auto ps = [&](unsigned e) {
        std::size_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= static_cast<std::size_t>(p);
        return q;
    };
    if (order < ps(s) + static_cast<std::size_t>(p))
        throw std::invalid_argument("dwork_congruence_check: order below p^s + p");
    const auto f = f_series_mod(op, p, s, order);
    const auto trunc_series = [&](std::size_t below) {
        auto out = TruncatedSeries<Zps>::zero(f.exemplar(), f.order());
        for (std::size_t k = 0; k < below && k < f.order(); ++k) out.set_coeff(k, f.coeff(k));
        return out;
    };
    const auto lhs = trunc_series(ps(s)) * spread(trunc_series(ps(s)), static_cast<std::size_t>(p));
    const auto rhs =
        trunc_series(ps(s + 1)) * spread(trunc_series(ps(s - 1)), static_cast<std::size_t>(p));
    return lhs.agrees_with(rhs, order);
}

// ---------------------------------------------------------------------------
// Teichmuller lifts and unit roots

/// Fixed point of x -> x^p in Z/p^s reducing to x0 mod p.
struct TeichPoint {
    Zps residue;
};

inline TeichPoint teichmuller(std::int64_t x0, std::int64_t p, unsigned s) {
    Zps y(x0, p, s);
    for (unsigned i = 0; i <= s + 2; ++i) {
        const Zps next = y.pow(static_cast<unsigned long>(p));
        if (next == y) return TeichPoint{y};
        y = next;
    }
    throw std::logic_error("teichmuller: iteration failed to stabilize");
}

/// Unit-root evaluation from a precomputed F mod p^s (order >= p^s):
/// u = c * F^{<p^s}(t-hat) / F^{<p^{s-1}}(t-hat^p); the denominator must be
/// a unit, which holds at ordinary points.
inline Zps unit_root_from_series(const TruncatedSeries<Zps>& f, std::int64_t x0, long constant) {
    const std::int64_t p = f.coeff(0).prime();
    const unsigned s = f.coeff(0).exponent();
    std::size_t psz = 1;
    for (unsigned i = 0; i < s; ++i) psz *= static_cast<std::size_t>(p);
    if (f.order() < psz)
        throw std::invalid_argument("unit_root: series order below p^s");
    const Zps that = teichmuller(x0, p, s).residue; // t-hat^p = t-hat
    Zps num = f.coeff(0).zero();
    Zps den = f.coeff(0).zero();
    Zps tp = f.coeff(0).one();
    const std::size_t denom_cut = psz / static_cast<std::size_t>(p);
    for (std::size_t k = 0; k < psz; ++k) {
        num = num + f.coeff(k) * tp;
        if (k < denom_cut) den = den + f.coeff(k) * tp;
        tp = tp * that;
    }
    if (!den.is_unit())
        throw std::domain_error("unit_root: denominator not a unit (ordinarity misjudged)");
    const Zps c = teichmuller(detail::mod_norm(constant, p), p, s).residue;
    return c * num * den.inverse();
}

/// Unit root of frobenius at the fiber x0 (nullopt = not ordinary).  The
/// optional constant supplies the geometric frobenius eigenvalue at 0 that
/// the operator alone does not determine (+1 by normalization).
inline std::optional<Zps> unit_root(const ThetaOperator& op, std::int64_t p, unsigned s,
                                    std::int64_t x0, long constant = 1) {
    const auto hasse = f_series_mod_p(op, p, static_cast<std::size_t>(p));
    const auto h = truncate(hasse, static_cast<std::size_t>(p));
    if (h.eval(Fp(x0, p)).is_zero()) return std::nullopt;
    std::size_t psz = 1;
    for (unsigned i = 0; i < s; ++i) psz *= static_cast<std::size_t>(p);
    const auto f = f_series_mod(op, p, s, psz);
    return unit_root_from_series(f, x0, constant);
}

// ---------------------------------------------------------------------------
// point counting on the Legendre pencil

/// Trace of frobenius a_p = p + 1 - #E for y^2 = x(x-1)(x-lambda) by brute
/// force; the fibers lambda = 0, 1 are singular.
inline long elliptic_point_count(std::int64_t p, std::int64_t lambda) {
    if (!detail::is_prime_small(p) || p == 2)
        throw std::invalid_argument("elliptic_point_count: p must be an odd prime");
    const std::int64_t l = detail::mod_norm(lambda, p);
    if (l == 0 || l == 1)
        throw std::domain_error("elliptic_point_count: singular fiber lambda in {0, 1}");
    // quadratic character via Euler's criterion
    const auto chi = [&](std::int64_t v) -> long {
        v = detail::mod_norm(v, p);
        if (v == 0) return 0;
        std::int64_t acc = 1, base = v;
        std::int64_t e = (p - 1) / 2;
        while (e) {
            if (e & 1) acc = detail::mod_mul(acc, base, p);
            base = detail::mod_mul(base, base, p);
            e >>= 1;
        }
        return acc == 1 ? 1 : -1;
    };
    long sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t fx =
            detail::mod_mul(detail::mod_mul(x, x - 1 + p, p), detail::mod_norm(x - l, p), p);
        sum += chi(fx);
    }
    return -sum;
}

// ---------------------------------------------------------------------------
// higher Hasse invariant and slopes

/// Candidate for the higher Hasse invariant: (FG' - F'G)^{<p} mod p, up to
/// the geometric constant.  Errors when wr_1 is not p-integral.
inline DensePolynomial<Fp> higher_hasse(const ThetaOperator& op, std::int64_t p) {
    if (op.order() < 2) throw std::invalid_argument("higher_hasse: order must be >= 2");
    if (!detail::is_prime_small(p) || p <= static_cast<std::int64_t>(op.order()))
        throw std::domain_error("higher_hasse: bad prime");
    const auto basis = frobenius_basis(op, static_cast<std::size_t>(p));
    const auto fcheck = wronskian(basis, 1);
    return truncate(reduce_series(fcheck, p), static_cast<std::size_t>(p));
}

/// Beginning of the Newton polygon over a point, from the values of the two
/// Hasse invariants there.
enum class SlopeSignature {
    ordinary,        // slopes start 0, 1        (H != 0, H-check != 0)
    zero_then_deep,  // slopes start 0, >1       (H != 0, H-check = 0)
    half_half,       // slopes start 1/2, 1/2    (H = 0, H-check != 0)
    deep             // slopes > 1/2             (H = 0, H-check = 0)
};

inline SlopeSignature slope_classification(const Fp& h_val, const Fp& hcheck_val) {
    if (!h_val.is_zero()) return hcheck_val.is_zero() ? SlopeSignature::zero_then_deep
                                                      : SlopeSignature::ordinary;
    return hcheck_val.is_zero() ? SlopeSignature::deep : SlopeSignature::half_half;
}

inline const char* to_string(SlopeSignature s) {
    switch (s) {
        case SlopeSignature::ordinary: return "0, 1, ...";
        case SlopeSignature::zero_then_deep: return "0, >1";
        case SlopeSignature::half_half: return "1/2, 1/2";
        default: return ">1/2";
    }
}

// ---------------------------------------------------------------------------
// integrality of F

struct IntegralityFinding {
    Integer prime;            // prime (or residual composite factor) in a denominator
    std::size_t first_degree; // first coefficient degree where it appears
};

/// Primes appearing in coefficient denominators of F through the given
/// order, each with the first degree of appearance.
inline std::vector<IntegralityFinding> integrality_report(const ThetaOperator& op,
                                                          std::size_t order) {
    const auto f = power_series_solution(op, order);
    std::map<Integer, std::size_t> first;
    for (std::size_t k = 0; k < order; ++k) {
        Integer den = f.coeff(k).denominator();
        if (den == 1) continue;
        for (std::int64_t q = 2; q * q <= den && q < 100000; ++q) {
            if (den % q != 0) continue;
            if (!first.count(Integer(q))) first.emplace(Integer(q), k);
            while (den % q == 0) den /= q;
        }
        if (den > 1 && !first.count(den)) first.emplace(den, k);
    }
    std::vector<IntegralityFinding> out;
    out.reserve(first.size());
    for (const auto& [prime, deg] : first) out.push_back({prime, deg});
    return out;
}

} // namespace cyode
