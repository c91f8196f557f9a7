#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cyode/parse.hpp"
#include "test_util.hpp"

using namespace cyode;

using testutil::dwork;
using testutil::legendre;
using testutil::make_poly;
using testutil::rf;

TEST_CASE("basic operator expressions") {
    const auto leg = parse_operator("theta^2 - t*(theta + 1/2)^2");
    CHECK(leg == legendre());

    const auto th = parse_operator("theta");
    CHECK(th.order() == 1);
    CHECK(th.a(0).is_zero());

    // left multiplication by g does not expand; theta*g does
    const auto lm = parse_operator("t*theta");
    CHECK(lm.order() == 1);
    CHECK(lm.a(0).is_zero());
    const auto rmul = parse_operator("theta*t");
    CHECK(rmul.a(0) == rf({1})); // theta t = t theta + t, monicized by t
}

TEST_CASE("the commutator collapses to order 0 and is rejected") {
    CHECK_THROWS_WITH(parse_operator("t*theta - theta*t"),
                      Catch::Matchers::ContainsSubstring("theta-free"));
    CHECK_THROWS_AS(parse_operator("t*theta - theta*t"), std::domain_error);
    CHECK_THROWS_AS(parse_operator("1 + 2"), std::domain_error);
}

TEST_CASE("parameter renaming") {
    const auto a = parse_operator("theta^2 - lambda*(theta + 1/2)^2", "lambda");
    CHECK(a == legendre());
    CHECK_THROWS_AS(parse_operator("theta - t", "lambda"), ParseError);
}

TEST_CASE("division rules") {
    const auto op = parse_operator("theta^2 + t/(1 - t)*theta");
    CHECK(op.a(1) == RationalFunction<Rational>(make_poly({0, 1}), make_poly({1, -1})));
    CHECK_THROWS_AS(parse_operator("t/theta"), std::domain_error);
    CHECK_THROWS_AS(parse_operator("theta/0"), std::domain_error);
    CHECK_THROWS_AS(parse_operator("theta/(1-1)"), std::domain_error);
}

TEST_CASE("powers") {
    CHECK(parse_operator("theta^3") == testutil::theta_n(3));
    const auto neg = parse_operator("(1 - t)^-1 * theta");
    CHECK(neg.order() == 1);
    CHECK(neg.raw_poly().coeffs()[1] ==
          RationalFunction<Rational>(make_poly({1}), make_poly({1, -1})));
    CHECK_THROWS_AS(parse_operator("theta^-1"), std::domain_error);
    CHECK_THROWS_AS(parse_operator("theta^t"), ParseError);
    CHECK(parse_operator("theta^(2)") == testutil::theta_n(2));
    // big integer literals flow through exactly
    const auto big = parse_rational_function("123456789012345678901234567890/2");
    CHECK(big.numerator().coeffs()[0] ==
          Rational(Integer("61728394506172839450617283945"), Integer(1)));
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_operator("theta^2 + $");
        FAIL("expected a throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 10);
    }
    CHECK_THROWS_AS(parse_operator("theta +"), ParseError);
    CHECK_THROWS_AS(parse_operator("(theta"), ParseError);
    CHECK_THROWS_AS(parse_operator("theta 2"), ParseError);
    CHECK_THROWS_AS(parse_operator("frob + 1"), ParseError);
}

TEST_CASE("printing round trips through the parser") {
    for (const auto& op : {legendre(), dwork(2), dwork(3), dwork(4), testutil::theta_n(5),
                           testutil::hypergeom_half4()}) {
        const auto text = op_to_string(op, "t");
        CHECK(parse_operator(text) == op);
    }

    std::mt19937 rng(909);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, 2), ord(1, 4);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<RationalFunction<Rational>> v;
        const int n = ord(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<Rational> nc, dc;
            const int dn = deg(rng), dd = deg(rng);
            for (int j = 0; j <= dn; ++j) nc.emplace_back(coeff(rng));
            dc.emplace_back(1 + std::abs(coeff(rng)));
            for (int j = 1; j <= dd; ++j) dc.emplace_back(coeff(rng));
            v.emplace_back(DensePolynomial<Rational>(std::move(nc)),
                           DensePolynomial<Rational>(std::move(dc)));
        }
        v.push_back(rf({1}));
        const ThetaOperator op{ThetaPoly<Rational>(std::move(v))};
        CHECK(parse_operator(op_to_string(op, "t")) == op);
    }
}

TEST_CASE("rational function printing") {
    CHECK(ratfun_to_string(rf({1, -1}), "t") == "-t + 1");
    // t/(1-t) normalizes to a monic denominator: (-t)/(t - 1)
    CHECK(ratfun_to_string(RationalFunction<Rational>(make_poly({0, 1}), make_poly({1, -1})), "t")
          == "(-t)/(t - 1)");
    CHECK(ratfun_to_string(rf({0}), "t") == "0");
    const auto q = parse_rational_function("(-t)/(t - 1)");
    CHECK(q == RationalFunction<Rational>(make_poly({0, 1}), make_poly({1, -1})));
}

TEST_CASE("series printing") {
    std::vector<Rational> v{Rational(1), Rational(0), Rational(-1, 4)};
    CHECK(series_to_string(TruncatedSeries<Rational>(std::move(v)), "t") ==
          "1 - 1/4*t^2 + O(t^3)");
}
