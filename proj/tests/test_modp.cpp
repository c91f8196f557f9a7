#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cyode/modp.hpp"
#include "test_util.hpp"

using namespace cyode;

using testutil::dwork;
using testutil::hypergeom_half4;
using testutil::legendre;
using testutil::theta_n;

namespace {

/// Deuring-style oracle for the Legendre Hasse polynomial:
/// sum_k binom((p-1)/2, k)^2 lambda^k.
DensePolynomial<Fp> deuring_polynomial(std::int64_t p) {
    const std::int64_t m = (p - 1) / 2;
    std::vector<Fp> v;
    mpz_class binom;
    for (std::int64_t k = 0; k <= m; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m),
                     static_cast<unsigned long>(k));
        mpz_class sq = binom * binom;
        mpz_class r = sq % p;
        v.push_back(Fp(r.get_si(), p));
    }
    return DensePolynomial<Fp>(std::move(v));
}

/// Unit root of T^2 - a_p T + p in Z/p^s by Hensel lifting from a_p mod p.
Zps hensel_unit_root(long ap, std::int64_t p, unsigned s) {
    const Zps a(ap, p, s), c(p, p, s);
    Zps u(ap, p, s);
    for (int it = 0; it < 8; ++it) {
        const Zps fu = u * u - a * u + c;
        if (fu.is_zero()) break;
        u = u - fu * (u + u - a).inverse();
    }
    REQUIRE((u * u - a * u + c).is_zero());
    return u;
}

} // namespace

TEST_CASE("truncate and reduce") {
    const auto f = f_series_mod_p(legendre(), 5, 5);
    const auto h = truncate(f, 3);
    // 1 + 1/4 t + 9/64 t^2 -> 1 + 4t + t^2 mod 5
    REQUIRE(h.degree() == 2);
    CHECK(h.coeff(0, Fp(0, 5)).value() == 1);
    CHECK(h.coeff(1, Fp(0, 5)).value() == 4);
    CHECK(h.coeff(2, Fp(0, 5)).value() == 1);
}

TEST_CASE("f_series_mod rejects bad primes") {
    // dwork(2) has 3-power denominators
    CHECK_THROWS_AS(f_series_mod(dwork(2), 3, 1, 10), std::domain_error);
    CHECK_FALSE(is_good_prime(dwork(2), 3, 10));
    CHECK(is_good_prime(dwork(2), 5, 30));
    // p must exceed the order
    CHECK_FALSE(is_good_prime(dwork(4), 3, 10));
    // dwork(4) has 5-power denominators: 5 is not usable
    CHECK_FALSE(is_good_prime(dwork(4), 5, 10));
}

TEST_CASE("Hasse candidate for Legendre matches the Deuring oracle") {
    for (std::int64_t p : {5, 7, 11, 13}) {
        const auto rep = hasse_candidate(legendre(), p);
        CHECK(rep.hasse == deuring_polynomial(p));
        CHECK(rep.degree == (p - 1) / 2);
        CHECK(rep.simple_roots);
        CHECK(rep.constant_unit);
        CHECK(rep.exact_solution);
    }
}

TEST_CASE("Hasse degrees for the Dwork families") {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::int64_t p : {7, 11, 13}) {
            const auto rep = hasse_candidate(dwork(n), p);
            CHECK(rep.degree == (p - 1) / static_cast<long>(n + 1));
        }
    }
    // theta^n: candidate is the constant 1
    const auto rep = hasse_candidate(theta_n(3), 7);
    CHECK(rep.degree == 0);
    CHECK(rep.hasse.coeff(0, Fp(0, 7)).value() == 1);
}

TEST_CASE("frobenius ratio is rational and solves L mod p") {
    // Legendre, p = 5: f-bar = 1 + 4t + t^2 + O(t^5) as series
    const auto fbar = frobenius_ratio_rational(legendre(), 5, 4);
    const auto exp5 = expand_at_zero(fbar, 5);
    CHECK(exp5.coeff(0).value() == 1);
    CHECK(exp5.coeff(1).value() == 4);
    CHECK(exp5.coeff(2).value() == 1);
    CHECK(exp5.coeff(3).value() == 0);
    CHECK(exp5.coeff(4).value() == 0);

    // theta^n: f-bar = 1
    const auto triv = frobenius_ratio_rational(theta_n(2), 7, 2);
    CHECK(triv.is_constant());

    // dwork(2), p = 7
    const auto d2 = frobenius_ratio_rational(dwork(2), 7, 7);
    CHECK(expand_at_zero(d2, 7).coeff(0).value() == 1);

    for (std::int64_t p : {5, 7}) {
        frobenius_ratio_rational(legendre(), p, static_cast<std::size_t>(p));
        frobenius_ratio_rational(dwork(2), p, static_cast<std::size_t>(p));
    }
}

TEST_CASE("Dwork congruence at s = 1") {
    for (std::int64_t p : {5, 7, 11, 13}) {
        CHECK(dwork_congruence_check(legendre(), p, 1, 60));
        CHECK(dwork_congruence_check(dwork(2), p, 1, 60));
        CHECK(dwork_congruence_check(dwork(3), p, 1, 60));
        if (p != 5) CHECK(dwork_congruence_check(dwork(4), p, 1, 60));
        CHECK(dwork_congruence_check(hypergeom_half4(), p, 1, 60));
        CHECK(dwork_congruence_check(theta_n(2), p, 1, 60));
    }
    CHECK_THROWS_AS(dwork_congruence_check(legendre(), 11, 2, 60), std::invalid_argument);
}

TEST_CASE("Dwork congruence at s = 2 for the Legendre family") {
    CHECK(dwork_congruence_check(legendre(), 5, 2, 40));
}

TEST_CASE("Teichmuller lifts") {
    CHECK(teichmuller(1, 7, 3).residue.value() == 1);
    CHECK(teichmuller(0, 7, 3).residue.value() == 0);
    CHECK(teichmuller(2, 5, 3).residue.value() == 57);
    for (std::int64_t x = 1; x < 13; ++x) {
        const auto t = teichmuller(x, 13, 3).residue;
        CHECK(t.pow(13) == t);
        CHECK(t.value() % 13 == x);
    }
}

TEST_CASE("unit root at s = 1 equals the Hasse candidate value") {
    for (std::int64_t p : {5, 7, 11}) {
        const auto rep = hasse_candidate(legendre(), p);
        for (std::int64_t x = 2; x < p; ++x) {
            const auto u = unit_root(legendre(), p, 1, x);
            const auto hval = rep.hasse.eval(Fp(x, p));
            if (hval.is_zero()) {
                CHECK_FALSE(u.has_value());
            } else {
                REQUIRE(u.has_value());
                CHECK(u->value() == hval.value());
            }
        }
    }
}

TEST_CASE("unit roots at increasing level agree after reduction") {
    for (std::int64_t x : {2, 3}) {
        const auto u2 = unit_root(legendre(), 5, 2, x);
        const auto u3 = unit_root(legendre(), 5, 3, x);
        REQUIRE(u2.has_value());
        REQUIRE(u3.has_value());
        CHECK(u3->reduced_to(2) == *u2);
    }
}

TEST_CASE("point counting on the Legendre pencil") {
    // p = 5, lambda = 2: 8 points, a_5 = -2
    CHECK(elliptic_point_count(5, 2) == -2);
    CHECK_THROWS_AS(elliptic_point_count(5, 0), std::domain_error);
    CHECK_THROWS_AS(elliptic_point_count(5, 1), std::domain_error);

    for (std::int64_t p : {5, 7, 11, 13}) {
        const auto rep = hasse_candidate(legendre(), p);
        for (std::int64_t l = 2; l < p; ++l) {
            const long ap = elliptic_point_count(p, l);
            // Hasse bound
            CHECK(ap * ap <= 4 * p);
            // supersingular iff the Hasse candidate vanishes
            const bool ss = ap % p == 0;
            CHECK(ss == rep.hasse.eval(Fp(l, p)).is_zero());
        }
    }
}

TEST_CASE("unit root against point counting via Hensel lifting") {
    // the frobenius constant at 0 for the Legendre pencil is (-1)^((p-1)/2)
    for (std::int64_t p : {5, 7, 11, 13}) {
        const long constant = (p - 1) / 2 % 2 == 0 ? 1 : -1;
        const auto fs = f_series_mod(legendre(), p, 3,
                                     static_cast<std::size_t>(p * p * p));
        const auto rep = hasse_candidate(legendre(), p);
        for (std::int64_t l = 2; l < p; ++l) {
            const long ap = elliptic_point_count(p, l);
            if (rep.hasse.eval(Fp(l, p)).is_zero()) {
                CHECK(ap % p == 0);
                CHECK_FALSE(unit_root(legendre(), p, 3, l, constant).has_value());
                continue;
            }
            const auto u = unit_root_from_series(fs, l, constant);
            CHECK(u == hensel_unit_root(ap, p, 3));
        }
    }
}

TEST_CASE("spec example: Legendre p = 5, x = 2") {
    const auto u1 = unit_root(legendre(), 5, 1, 2);
    REQUIRE(u1.has_value());
    CHECK(u1->value() == 3);

    const auto u3 = unit_root(legendre(), 5, 3, 2);
    REQUIRE(u3.has_value());
    const long a5 = elliptic_point_count(5, 2);
    CHECK(*u3 == hensel_unit_root(a5, 5, 3));
}

TEST_CASE("higher Hasse invariant") {
    // theta^2: F-check = 1
    const auto h2 = higher_hasse(theta_n(2), 7);
    CHECK(h2.degree() == 0);
    CHECK(h2.coeff(0, Fp(0, 7)).value() == 1);

    const auto hleg = higher_hasse(legendre(), 7);
    CHECK_FALSE(hleg.coeff(0, Fp(0, 7)).is_zero());
    CHECK(hleg.degree() < 7);

    const auto hd4 = higher_hasse(dwork(4), 11);
    CHECK(hd4.degree() < 11);
    CHECK_FALSE(hd4.coeff(0, Fp(0, 11)).is_zero());
}

TEST_CASE("slope classification table") {
    const Fp z(0, 7), u(3, 7);
    CHECK(slope_classification(u, u) == SlopeSignature::ordinary);
    CHECK(slope_classification(u, z) == SlopeSignature::zero_then_deep);
    CHECK(slope_classification(z, u) == SlopeSignature::half_half);
    CHECK(slope_classification(z, z) == SlopeSignature::deep);
}

TEST_CASE("integrality reports") {
    // Legendre: only the prime 2 appears in denominators
    const auto leg = integrality_report(legendre(), 64);
    REQUIRE(leg.size() == 1);
    CHECK(leg[0].prime == 2);

    // theta^n: empty
    CHECK(integrality_report(theta_n(3), 32).empty());

    // dwork(2): only 3
    const auto d2 = integrality_report(dwork(2), 64);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].prime == 3);

    // dwork(4): only 5
    const auto d4 = integrality_report(dwork(4), 64);
    REQUIRE(d4.size() == 1);
    CHECK(d4[0].prime == 5);
}

TEST_CASE("L(F^{<p}) vanishes identically mod p for the catalog") {
    for (std::int64_t p : {5, 7, 11, 13}) {
        CHECK(hasse_candidate(legendre(), p).exact_solution);
        CHECK(hasse_candidate(dwork(2), p).exact_solution);
        CHECK(hasse_candidate(dwork(3), p).exact_solution);
        if (p != 5) CHECK(hasse_candidate(dwork(4), p).exact_solution);
        CHECK(hasse_candidate(hypergeom_half4(), p).exact_solution);
    }
}
