#include <catch_amalgamated.hpp>

#include <cmath>

#include "kforge/arith.hpp"
#include "kforge/errors.hpp"

using namespace kforge;

namespace {

i64 naive_gcd(i64 a, i64 b) {
    a = std::abs(a);
    b = std::abs(b);
    i64 g = 0;
    for (i64 d = 1; d <= std::max(a, b); ++d)
        if (a % d == 0 && b % d == 0) g = d;
    return g;
}

cplx naive_ramanujan(i64 q, i64 n) {
    cplx acc = 0.0;
    for (i64 a = 1; a <= q; ++a)
        if (naive_gcd(a, q) == 1) acc += std::polar(1.0, 2.0 * M_PI * static_cast<double>(a * n % q) / static_cast<double>(q));
    return acc;
}

}  // namespace

TEST_CASE("gcd and inverses agree with brute force") {
    for (i64 a = -30; a <= 30; ++a)
        for (i64 b = 1; b <= 30; ++b) {
            REQUIRE(gcd(a, b) == naive_gcd(a, b));
            auto e = ext_gcd(a, b);
            REQUIRE(a * e.x + b * e.y == e.g);
            if (naive_gcd(a, b) == 1 && b > 1) {
                const i64 inv = mod_inverse(a, b);
                REQUIRE(mod_floor(a * inv, b) == 1);
            }
        }
    REQUIRE_THROWS_AS(mod_inverse(6, 9), NotInvertible);
    REQUIRE(lcm(4, 6) == 12);
}

TEST_CASE("Ramanujan sums match the exponential sum and the divisor formula") {
    for (i64 q = 1; q <= 40; ++q)
        for (i64 n = -5; n <= 45; ++n) {
            const cplx direct = naive_ramanujan(q, mod_floor(n, q));
            REQUIRE(std::abs(direct - static_cast<double>(ramanujan_sum(q, n))) < 1e-9);
            REQUIRE(ramanujan_sum(q, n) == ramanujan_sum_divisor(q, n));
        }
}

TEST_CASE("multiplicative functions and factorization") {
    for (i64 n = 1; n <= 500; ++n) {
        i64 prod = 1;
        for (auto [p, e] : factorize(n)) {
            REQUIRE(is_prime(p));
            prod *= ipow(p, e);
        }
        REQUIRE(prod == n);
        i64 phi = 0, musum = 0;
        for (i64 a = 1; a <= n; ++a) phi += naive_gcd(a, n) == 1;
        REQUIRE(euler_phi(n) == phi);
        for (i64 d : divisors(n)) {
            REQUIRE(n % d == 0);
            musum += mobius(d);
        }
        REQUIRE(musum == (n == 1 ? 1 : 0));
        bool sqf = true;
        for (i64 d = 2; d * d <= n; ++d) sqf = sqf && n % (d * d) != 0;
        REQUIRE(is_squarefree(n) == sqf);
    }
    REQUIRE(valuation(162, 3) == 4);
    REQUIRE(gcd_infinity(360, 6) == 72);
    REQUIRE(gcd_infinity(45, 2) == 1);
    REQUIRE(primes_upto(30) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("unit roots are exact at quarter points and residues normalise") {
    auto r = unit_roots(8);
    REQUIRE(r[0] == cplx(1.0, 0.0));
    REQUIRE(r[2] == cplx(0.0, 1.0));
    REQUIRE(r[4] == cplx(-1.0, 0.0));
    REQUIRE(r[6] == cplx(0.0, -1.0));
    REQUIRE(std::abs(r[1] - std::polar(1.0, M_PI / 4)) < 1e-15);
    REQUIRE(Residue(-3, 7).value == 4);
    REQUIRE_THROWS_AS(Residue(1, 0), InvalidArgument);
}

TEST_CASE("rounding accepts small residuals and rejects large ones") {
    REQUIRE(round_to_integer(cplx(3.0 + 1e-9, -1e-9), 9) == 3);
    REQUIRE(round_to_integer(cplx(-6.0, 0.0), 9) == -6);
    REQUIRE_THROWS_AS(round_to_integer(cplx(3.4, 0.0), 9), RoundingOverflow);
    REQUIRE_THROWS_AS(round_to_integer(cplx(3.0, 0.2), 9), RoundingOverflow);
}
