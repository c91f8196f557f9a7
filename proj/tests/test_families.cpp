#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "cyode/families.hpp"
#include "test_util.hpp"

using namespace cyode;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path(std::string("cyode_test_") + name + ".json") {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("catalog contents") {
    const auto& cat = catalog();
    REQUIRE(cat.size() >= 5);
    const auto& leg = find_family("legendre");
    CHECK(leg.op == testutil::legendre());
    CHECK(leg.op.a(1) ==
          RationalFunction<Rational>(testutil::make_poly({0, -1}), testutil::make_poly({1, -1})));
    CHECK(find_family("dwork-2").op == testutil::dwork(2));
    CHECK(find_family("dwork-3").op == testutil::dwork(3));
    CHECK(find_family("dwork-4").op == testutil::dwork(4));
    CHECK(find_family("hadamard-legendre-squared").op == testutil::hypergeom_half4());
    CHECK_THROWS_AS(find_family("nope"), std::invalid_argument);

    for (const auto& e : cat) {
        CHECK(check_condition_N(e.op));
        const auto rep = classify(e.op);
        CHECK(rep.calabi_yau);
        // dwork(n) monicized has a_{n-1} = -(n/2) lambda / (1 - lambda)
        if (e.name.rfind("dwork-", 0) == 0) {
            const long n = static_cast<long>(e.op.order());
            const auto expected = RationalFunction<Rational>(
                testutil::make_poly({0, -1}), testutil::make_poly({1, -1}))
                                      .scaled_by_int(n) *
                                  RationalFunction<Rational>(Rational(1, 2));
            CHECK(e.op.a(e.op.order() - 1) == expected);
        }
    }
}

TEST_CASE("save and load round trip") {
    TempFile tmp("roundtrip");
    save_families(catalog(), tmp.path);
    const auto loaded = load_families(tmp.path);
    REQUIRE(loaded.size() == catalog().size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].name == catalog()[i].name);
        CHECK(loaded[i].op == catalog()[i].op);
        CHECK(loaded[i].parameter == catalog()[i].parameter);
        CHECK(loaded[i].expected_hasse_degree == catalog()[i].expected_hasse_degree);
        if (catalog()[i].expected_beta) {
            REQUIRE(loaded[i].expected_beta.has_value());
            CHECK(*loaded[i].expected_beta == *catalog()[i].expected_beta);
        }
    }
}

TEST_CASE("malformed file gives a structured error with position") {
    TempFile tmp("malformed");
    {
        std::ofstream out(tmp.path);
        out << "[{\"name\": \"x\",\n  \"order\": }]\n";
    }
    CHECK_THROWS_WITH(load_families(tmp.path),
                      Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_AS(load_families("does_not_exist.json"), std::runtime_error);
}

TEST_CASE("entries violating condition (N) are rejected") {
    TempFile tmp("badop");
    {
        std::ofstream out(tmp.path);
        out << R"json([{"name": "bad", "order": 2, "parameter": "t",
                    "coefficients": ["1 + t", "0"]}])json";
    }
    CHECK_THROWS_WITH(load_families(tmp.path),
                      Catch::Matchers::ContainsSubstring("condition (N)"));
}

TEST_CASE("expected-value mismatches are rejected") {
    TempFile tmp("badbeta");
    {
        std::ofstream out(tmp.path);
        out << R"json([{"name": "leg", "order": 2, "parameter": "u",
                    "coefficients": ["(1/4*u)/(u - 1)", "(u)/(u - 1)"],
                    "expected": {"beta": "1 + u"}}])json";
    }
    CHECK_THROWS_WITH(load_families(tmp.path),
                      Catch::Matchers::ContainsSubstring("beta-factor mismatch"));

    TempFile tmp2("badhasse");
    {
        std::ofstream out(tmp2.path);
        out << R"json([{"name": "leg", "order": 2, "parameter": "u",
                    "coefficients": ["(1/4*u)/(u - 1)", "(u)/(u - 1)"],
                    "expected": {"hasse_degree": {"5": 3}}}])json";
    }
    CHECK_THROWS_WITH(load_families(tmp2.path),
                      Catch::Matchers::ContainsSubstring("Hasse degree mismatch"));
}
