#include <catch2/catch_amalgamated.hpp>

#include "cyode/rational.hpp"

using cyode::Integer;
using cyode::Rational;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    Rational a(6, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.denominator() == 2);

    Rational b(-3, -6);
    CHECK(b.numerator() == 1);
    CHECK(b.denominator() == 2);

    Rational c(5, -10);
    CHECK(c.numerator() == -1);
    CHECK(c.denominator() == 2);

    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0).denominator() == 1);
}

TEST_CASE("arithmetic") {
    Rational half(1, 2), third(1, 3);
    CHECK(half + third == Rational(5, 6));
    CHECK(half - third == Rational(1, 6));
    CHECK(half * third == Rational(1, 6));
    CHECK(half / third == Rational(3, 2));
    CHECK(-half == Rational(-1, 2));
    CHECK(half.inverse() == Rational(2));
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
    CHECK_THROWS_AS(half / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("string round trips") {
    CHECK(Rational("9/64") == Rational(9, 64));
    CHECK(Rational("-7").str() == "-7");
    CHECK(Rational(22, 8).str() == "11/4");
    CHECK_THROWS_AS(Rational("abc"), std::invalid_argument);
}

TEST_CASE("pow") {
    CHECK(cyode::pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(cyode::pow(Rational(2, 3), 0) == Rational(1));
    CHECK(cyode::pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(cyode::pow(Rational(5), 20) == Rational(Integer("95367431640625"), Integer(1)));
}
