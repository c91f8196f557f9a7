#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cyode/polynomial.hpp"
#include "cyode/rational.hpp"
#include "cyode/rational_function.hpp"

using cyode::DensePolynomial;
using cyode::Rational;
using cyode::RationalFunction;

using Poly = DensePolynomial<Rational>;
using RatFun = RationalFunction<Rational>;

namespace {
Poly make(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.emplace_back(c);
    return Poly(std::move(v));
}
} // namespace

TEST_CASE("normal form strips trailing zeros") {
    CHECK(make({1, 2, 0, 0}).degree() == 1);
    CHECK(make({0, 0}).is_zero());
    CHECK(Poly().degree() == -1);
}

TEST_CASE("arithmetic and evaluation") {
    const Poly p = make({1, 2, 1});  // (1+t)^2
    const Poly q = make({1, 1});     // 1+t
    CHECK(q * q == p);
    CHECK(p - p == Poly());
    CHECK(p.eval(Rational(2)) == Rational(9));
    CHECK(p.derivative() == make({2, 2}));
    CHECK(p.theta() == make({0, 2, 2}));
}

TEST_CASE("euclidean division and gcd") {
    const Poly p = make({-1, 0, 1});  // t^2-1
    const Poly q = make({1, 1});      // t+1
    auto [quot, rem] = poly_divmod(p, q);
    CHECK(rem.is_zero());
    CHECK(quot == make({-1, 1}));
    CHECK(poly_gcd(p, q) == q);
    CHECK(poly_gcd(make({0, 1}), Poly()) == make({0, 1}));
}

TEST_CASE("squarefree detection and Yun decomposition") {
    const Poly t = make({0, 1});
    const Poly sq = make({0, 0, 1});        // t^2
    const Poly mixed = make({1, 1}) * sq;   // (1+t) t^2
    CHECK(poly_is_squarefree(make({-1, 0, 1})));
    CHECK(!poly_is_squarefree(sq));
    auto parts = squarefree_decomposition(mixed);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == make({1, 1}));
    CHECK(parts[1] == t);
}

TEST_CASE("rational functions normalize to coprime with monic denominator") {
    const RatFun f(make({0, 2}), make({2, 2}));  // 2t / (2+2t) = t/(1+t)
    CHECK(f.numerator() == make({0, 1}));
    CHECK(f.denominator() == make({1, 1}));

    const RatFun g(make({0, 0, 1}), make({0, 1}));  // t^2/t = t
    CHECK(g.is_polynomial());
    CHECK(g.numerator() == make({0, 1}));

    CHECK(f - f == f.zero());
    CHECK((f / f) == f.one());
    CHECK(f.inverse().numerator() == make({1, 1}));
}

TEST_CASE("rational function arithmetic keeps normal form on random inputs") {
    std::mt19937 rng(12345);
    auto rand_poly = [&](int maxdeg) {
        std::uniform_int_distribution<int> degd(0, maxdeg), coeff(-4, 4);
        std::vector<Rational> v;
        const int d = degd(rng);
        for (int i = 0; i <= d; ++i) v.emplace_back(coeff(rng));
        return Poly(std::move(v));
    };
    for (int trial = 0; trial < 50; ++trial) {
        Poly d1 = rand_poly(3), d2 = rand_poly(3);
        if (d1.is_zero() || d2.is_zero()) continue;
        const RatFun a(rand_poly(3), d1);
        const RatFun b(rand_poly(3), d2);
        for (const RatFun& r : {a + b, a - b, a * b, a.theta()}) {
            if (r.is_zero()) {
                CHECK(r.denominator().degree() == 0);
                continue;
            }
            CHECK(r.denominator().leading() == Rational(1));
            CHECK(poly_gcd(r.numerator(), r.denominator()).degree() == 0);
        }
    }
}

TEST_CASE("theta on rational functions") {
    // theta(t/(1-t)) = t d/dt (t/(1-t)) = t/(1-t)^2
    const RatFun f(make({0, 1}), make({1, -1}));
    const RatFun expected(make({0, 1}), make({1, -1}) * make({1, -1}));
    CHECK(f.theta() == expected);
}
