#include <catch_amalgamated.hpp>

#include <algorithm>

#include "kforge/errors.hpp"
#include "kforge/resonator.hpp"

using namespace kforge;

TEST_CASE("single factors expand to themselves") {
    REQUIRE(resonator_terms({3}, {}) == std::vector<std::pair<i64, i64>>{{9, 1}});
    auto t = resonator_terms({3}, {3});
    std::sort(t.begin(), t.end());
    REQUIRE(t == std::vector<std::pair<i64, i64>>{{1, 1}, {3, 3}, {9, 9}});
}

TEST_CASE("nested expansion equals the direct product") {
    auto src = random_tempered_source({3, 5, 7, 11, 13}, 77);
    REQUIRE(resonator_expand(1, {15}, {}, src).pass);
    REQUIRE(resonator_expand(2, {3, 3}, {5}, src).pass);
    REQUIRE(resonator_expand(3, {9, 5, 21}, {3, 13}, src).pass);
    REQUIRE(resonator_expand(4, {3, 5, 7, 11}, {}, src).pass);
}

TEST_CASE("input validation") {
    auto src = random_tempered_source({3, 5}, 1);
    REQUIRE_THROWS_AS(resonator_expand(2, {3}, {}, src), InvalidArgument);
    REQUIRE_THROWS_AS(resonator_expand(1, {4}, {}, src), InvalidArgument);
    REQUIRE_THROWS_AS(resonator_expand(1, {33}, {}, src), InvalidArgument);
    REQUIRE_THROWS_AS(resonator_expand(1, {7}, {}, src), MissingPrime);
    src.set(SatakeTriple::ramified_steinberg(5, 0.0));
    REQUIRE_THROWS_AS(resonator_expand(1, {5}, {}, src), InvalidArgument);
    REQUIRE_THROWS_AS(dseries_euler_coefficients(4, 3, 2), InvalidArgument);
    REQUIRE_THROWS_AS(dseries_euler_coefficients(1, 9, 2), InvalidArgument);
}

TEST_CASE("Euler coefficients of the resonator Dirichlet series") {
    // frozen from the enumeration; identical for p = 3, 5, 7
    const std::vector<std::vector<i64>> expect{{1, 0, 1, 0, 1, 0, 1}, {1, 0, 4, 0, 11, 0, 24}, {1, 0, 9, 2, 54, 18, 254}};
    for (int k = 1; k <= 3; ++k)
        for (i64 p : {3, 5, 7}) {
            const auto c = dseries_euler_coefficients(k, p, 6);
            REQUIRE(c == expect[static_cast<std::size_t>(k - 1)]);
            REQUIRE(c[2] == k * k);
        }
}
