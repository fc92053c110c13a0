#include <catch_amalgamated.hpp>

#include <cmath>

#include "kforge/errors.hpp"
#include "kforge/gram.hpp"

using namespace kforge;

TEST_CASE("Gram matrix is Hermitian and the triangular transform orthonormalises it") {
    for (i64 p : {3, 5, 13, 97}) {
        auto src = random_tempered_source({p}, 40 + static_cast<std::uint64_t>(p));
        for (double norm2 : {1.0, 0.3}) {
            auto G = gram_matrix(p, src(1, p), src(p, 1), norm2);
            REQUIRE((G.G - G.G.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            auto c = gram_schmidt(G);
            // lower triangular with positive diagonal pins T down uniquely
            for (int i = 0; i < 3; ++i) {
                REQUIRE(c.T(i, i).real() > 0.0);
                REQUIRE(std::abs(c.T(i, i).imag()) < 1e-14);
                for (int j = i + 1; j < 3; ++j) REQUIRE(std::abs(c.T(i, j)) == 0.0);
            }
            const Eigen::Matrix3cd I = c.T * G.G * c.T.adjoint();
            REQUIRE((I - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
            REQUIRE(c.max_abs() <= 10.0 * std::pow(static_cast<double>(p), kTheta3 - 0.5));
        }
    }
}

TEST_CASE("Gram matrix input validation") {
    REQUIRE_THROWS_AS(gram_matrix(5, 3.5, 1.0), InvalidArgument);
    REQUIRE_THROWS_AS(gram_matrix(5, 1.0, 1.0, 0.0), InvalidArgument);
    REQUIRE_THROWS_AS(gram_schmidt(gram_matrix(5, 1.0, 2.0)), NotPositiveDefinite);
}

TEST_CASE("oldform coefficients") {
    auto src = random_tempered_source({3, 5}, 8);
    REQUIRE(oldform_coefficient(0, src, 3, 5, 9) == src(5, 9));
    REQUIRE(std::abs(oldform_coefficient(1, src, 3, 3, 5) - std::sqrt(3.0) * src(1, 15)) < 1e-14);
    REQUIRE(std::abs(oldform_coefficient(1, src, 3, 3, 3) - std::sqrt(3.0) * (src(1, 9) + src(3, 1))) < 1e-14);
    REQUIRE(oldform_coefficient(2, src, 3, 5, 1) == cplx(0.0));
    REQUIRE(std::abs(oldform_coefficient(2, src, 3, 9, 1) - 3.0 * src(3, 1)) < 1e-14);
    REQUIRE_THROWS_AS(oldform_coefficient(3, src, 3, 1, 1), InvalidArgument);
}

TEST_CASE("local L-function identities") {
    auto t = SatakeTriple::tempered(7, 0.4, 2.6);
    for (cplx s : {cplx(1.0, 0.0), cplx(2.0, -4.0)}) {
        REQUIRE(check_rankin_local(t, s).pass);
        REQUIRE(check_shift_identity(t, s).pass);
        REQUIRE(check_curlyL_identity(t, s).pass);
    }
    REQUIRE_THROWS_AS(check_rankin_local(t, 0.5), InvalidArgument);
}

TEST_CASE("Eisenstein data stay within a bounded envelope") {
    auto mn = eisenstein_ortho(SatakeTriple::eisenstein_min(7, cplx(0.0, 0.3), cplx(0.0, -1.1)));
    REQUIRE(mn.exponent == -0.5);
    REQUIRE(mn.K < 10.0);
    REQUIRE_THROWS_AS(eisenstein_ortho(SatakeTriple::tempered(7, 0.1, 0.2)), InvalidArgument);
}
