#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "kforge/errors.hpp"
#include "kforge/geometric.hpp"
#include "kforge/kloosterman.hpp"

using namespace kforge;

namespace {

using Pairs = std::vector<std::pair<i64, i64>>;

// summation conditions written out directly
Pairs filter(const GeometricTermSpec& g, WeylCell cell) {
    Pairs out;
    for (i64 D1 = 1; D1 <= g.cutoff; ++D1)
        for (i64 D2 = 1; D1 * D2 <= g.cutoff; ++D2) {
            bool ok = false;
            if (cell == WeylCell::W4) ok = D1 % (g.p * D2) == 0 && g.m2 * D1 == g.n1 * D2 * D2;
            if (cell == WeylCell::W5) ok = D1 % g.p == 0 && D2 % D1 == 0 && g.m1 * D2 == g.n2 * D1 * D1;
            if (cell == WeylCell::W6) ok = D1 % g.p == 0 && D2 % g.p == 0;
            if (ok) out.emplace_back(D1, D2);
        }
    return out;
}

}  // namespace

TEST_CASE("generators reproduce the filtered index sets") {
    for (i64 p : {3, 5, 7})
        for (auto [m1, m2, n1, n2] : {std::array<i64, 4>{1, 1, 1, 1}, {1, 7, 7, 1}, {11, 1, 1, 99}, {1, 1, 4, 2}}) {
            GeometricTermSpec g{p, m1, m2, n1, n2, 3000, 0.04};
            if (gcd(m1 * m2, 2 * p) != 1) continue;
            REQUIRE(term_pairs(enumerate_S4_terms(g, false)) == filter(g, WeylCell::W4));
            REQUIRE(term_pairs(enumerate_S5_terms(g, false)) == filter(g, WeylCell::W5));
            REQUIRE(term_pairs(enumerate_S6_terms(g, false)) == filter(g, WeylCell::W6));
        }
}

TEST_CASE("frozen S4 and S5 index sets at p = 3") {
    GeometricTermSpec g{3, 1, 1, 1, 1, 1000, 0.04};
    REQUIRE(term_pairs(enumerate_S4_terms(g, false)) == Pairs{{9, 3}, {36, 6}, {81, 9}});
    REQUIRE(term_pairs(enumerate_S5_terms(g, false)) == Pairs{{3, 9}, {6, 36}, {9, 81}});
    // two signs per pair in S4 and S5, four in S6
    REQUIRE(enumerate_S4_terms(g, false).size() == 6);
    REQUIRE(enumerate_S6_terms(g, false).size() == 4 * filter(g, WeylCell::W6).size());
}

TEST_CASE("term values and arguments") {
    GeometricTermSpec g{3, 1, 1, 1, 1, 81, 0.04};
    for (const auto& t : enumerate_S4_terms(g)) {
        REQUIRE(t.value.has_value());
        const cplx s = gl3_tilde_sum({-t.eps1 * g.n2, g.m2, g.m1, 0, t.D2, t.D1, 1});
        REQUIRE(std::abs(*t.value - s / static_cast<double>(t.D1 * t.D2)) < 1e-12);
        REQUIRE(t.arg1 == Catch::Approx(static_cast<double>(t.eps1 * g.m1 * g.m2 * g.n2) / static_cast<double>(t.D1 * t.D2)));
    }
    for (const auto& t : enumerate_S6_terms(g)) {
        const cplx s = gl3_twisted_sum({t.eps2 * g.n2, t.eps1 * g.n1, g.m1, g.m2, t.D1, t.D2, g.p});
        REQUIRE(std::abs(*t.value - s / static_cast<double>(t.D1 * t.D2)) < 1e-12);
    }
    auto terms = enumerate_S4_terms(g);
    const cplx total = assemble_terms(g, terms, [](double, double) { return cplx(1.0, 0.0); });
    cplx expect = 0.0;
    for (const auto& t : terms) expect += *t.value;
    REQUIRE(std::abs(total - 13.0 * expect) < 1e-12);
}

TEST_CASE("parameter validation") {
    REQUIRE_THROWS_AS(GeometricTermSpec({4, 1, 1, 1, 1, 100, 0.04}).validate(), InvalidArgument);
    REQUIRE_THROWS_AS(GeometricTermSpec({3, 3, 1, 1, 1, 100, 0.04}).validate(), InvalidArgument);
    REQUIRE_THROWS_AS(GeometricTermSpec({3, 1, 2, 9, 1, 100, 0.04}).validate(), InvalidArgument);
    REQUIRE_THROWS_AS(GeometricTermSpec({3, 1, 1, 1, 1, 100, 0.6}).validate(), InvalidArgument);
    REQUIRE_THROWS_AS(enumerate_S4_terms({3, 1, 1, 1, 1, 0, 0.04}), InvalidArgument);
    REQUIRE(GeometricTermSpec{5, 1, 1, 1, 1, 100, 0.04}.P() == 31);
}

TEST_CASE("delta term") {
    auto h = standard_test_function(41);
    GeometricTermSpec a{3, 1, 1, 1, 1, 100, 0.04}, b{5, 1, 1, 1, 1, 100, 0.04}, off{3, 1, 1, 5, 1, 100, 0.04};
    const cplx da = delta_term(a, h), db = delta_term(b, h);
    REQUIRE(da.real() > 0.0);
    REQUIRE(std::abs(da / db - 13.0 / 31.0) < 1e-12);
    REQUIRE(delta_term(off, h) == cplx(0.0));
}
