#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cyode/pade.hpp"
#include "cyode/zmod.hpp"

using cyode::DensePolynomial;
using cyode::Fp;
using cyode::Rational;
using cyode::RationalFunction;
using cyode::TruncatedSeries;

using Series = TruncatedSeries<Rational>;
using Poly = DensePolynomial<Rational>;
using RatFun = RationalFunction<Rational>;

namespace {
Poly make(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.emplace_back(c);
    return Poly(std::move(v));
}
} // namespace

TEST_CASE("geometric series reconstructs to 1/(1-t)") {
    std::vector<Rational> v(8, Rational(1));
    const auto r = pade_reconstruct(Series(std::move(v)), 0, 1);
    REQUIRE(r.has_value());
    CHECK(r->numerator() == make({-1}));
    CHECK(r->denominator() == make({-1, 1}));
    CHECK(*r == RatFun(make({1}), make({1, -1})));
}

TEST_CASE("polynomial input with zero denominator bound") {
    std::vector<Rational> v(6, Rational(0));
    v[0] = Rational(1);
    v[1] = Rational(-1);
    const auto r = pade_reconstruct(Series(std::move(v)), 1, 0);
    REQUIRE(r.has_value());
    CHECK(r->is_polynomial());
    CHECK(r->numerator() == make({1, -1}));
}

TEST_CASE("exp truncated at order 8 is rejected at bounds (3,3)") {
    // The [3/3] Pade approximant of exp matches through degree 6 and
    // differs from the series at the first unused coefficient (degree 7),
    // so the full re-expansion check must fail.
    auto e = series_exp(Series::t(Rational(0), 8));
    CHECK_FALSE(pade_reconstruct(e, 3, 3).has_value());
    CHECK_THROWS_AS(pade_reconstruct(e.truncated(6), 3, 3), std::invalid_argument);
}

TEST_CASE("reconstruction followed by re-expansion reproduces every coefficient") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    int successes = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Rational> nv, dv;
        const int dn = deg(rng), dd = deg(rng);
        for (int i = 0; i <= dn; ++i) nv.emplace_back(coeff(rng));
        for (int i = 0; i <= dd; ++i) dv.emplace_back(coeff(rng));
        Poly num(std::move(nv)), den(std::move(dv));
        if (den.is_zero() || den.coeff(0, Rational(0)).is_zero()) continue;
        const RatFun f(num, den);
        const auto series = expand_at_zero(f, 16);
        const auto r = pade_reconstruct(series, 3, 3);
        REQUIRE(r.has_value());
        CHECK(*r == f);
        CHECK(expand_at_zero(*r, 16) == series);
        ++successes;
    }
    CHECK(successes > 20);
}

TEST_CASE("reconstruction works over prime fields") {
    const Fp one(1, 7);
    // expansion of 1/(1-3t): coefficients 3^k
    std::vector<Fp> w;
    Fp c = one;
    for (int k = 0; k < 10; ++k) {
        w.push_back(c);
        c = c * Fp(3, 7);
    }
    const auto r = pade_reconstruct(TruncatedSeries<Fp>(std::move(w)), 0, 1);
    REQUIRE(r.has_value());
    CHECK(r->denominator().coeff(1, one) == one);          // monic t - 5
    CHECK(r->denominator().coeff(0, one) == Fp(-5, 7));    // (1-3t) scaled: -5 = 2... check by expansion
    CHECK(expand_at_zero(*r, 10).coeff(3) == Fp(27, 7));
}
