#include <catch_amalgamated.hpp>

#include <cmath>

#include "kforge/archimedean.hpp"
#include "kforge/errors.hpp"

using namespace kforge;

TEST_CASE("spectral parameters") {
    REQUIRE_THROWS_AS(SpectralParameter::make(1.0, 1.0, 1.0), InvalidArgument);
    REQUIRE(SpectralParameter::make(cplx(0.2, 1.0), cplx(-0.2, 1.0), cplx(0.0, -2.0), true).is_automorphic());
    REQUIRE_THROWS_AS(SpectralParameter::make(cplx(0.4, 1.0), cplx(-0.4, 1.0), cplx(0.0, -2.0), true), InvalidArgument);
    REQUIRE(!SpectralParameter::make(cplx(0.2, 1.0), cplx(0.1, 1.0), cplx(-0.3, -2.0)).is_automorphic());
}

TEST_CASE("spectral measure") {
    // -prod d tanh(pi d / 2) on tempered parameters, with d the imaginary parts of the differences
    auto mu = SpectralParameter::tempered(0.8, -1.9);
    const double t[3] = {0.8, -1.9, 1.1};
    double expect = -1.0;
    for (int i = 0; i < 3; ++i) {
        const double d = t[i] - t[(i + 1) % 3];
        expect *= d * std::tanh(M_PI * d / 2);
    }
    REQUIRE(std::abs(spec_measure(mu) - expect) < 1e-12 * std::abs(expect));
    // non-positive on the tempered axis; with dmu = -dt1 dt2 the measure is positive
    REQUIRE(spec_measure(mu).real() <= 0.0);
    REQUIRE_THROWS_AS(spec_measure(SpectralParameter::make(0.5, -0.5, 0.0)), TanPole);
}

TEST_CASE("test function normalisation, sign and zeros") {
    auto h = standard_test_function(41);
    REQUIRE(std::abs(h(SpectralParameter{}) - 1.0) < 1e-12);
    for (auto [t1, t2] : {std::pair<double, double>{0.3, 0.2}, {2.0, -5.0}, {7.5, 1.0}}) {
        auto mu = SpectralParameter::tempered(t1, t2);
        const cplx v = h(mu);
        REQUIRE(v.real() > 0.0);
        REQUIRE(std::abs(v.imag()) < 1e-10 * v.real());
        REQUIRE(std::abs(v - standard_test_function_direct(41, mu)) < 1e-9 * std::abs(v));
    }
    // with A0 = 40 the same product is negative at the origin
    REQUIRE(std::abs(standard_test_function_direct(40, SpectralParameter{}) + 1.0) < 1e-12);
    REQUIRE(std::abs(standard_test_function_direct(41, SpectralParameter::make(cplx(1.5, 0.1), cplx(-1.5, 0.1), cplx(0.0, -0.2)))) == 0.0);
    REQUIRE_THROWS_AS(standard_test_function(5), InvalidArgument);
}

TEST_CASE("kernels are Weyl invariant") {
    auto mu = SpectralParameter::tempered(1.3, 0.4);
    SpectralParameter w{mu.mu3, mu.mu1, mu.mu2};
    const cplx s(0.3, 2.0);
    REQUIRE(std::abs(kernel_G_tilde(s, mu, 1) - kernel_G_tilde(s, w, 1)) < 1e-12 * std::abs(kernel_G_tilde(s, mu, 1)));
    REQUIRE(std::abs(std::exp(log_polynomial_G(s, mu) - log_polynomial_G(s, w)) - 1.0) < 1e-10);
    const auto direct = polynomial_G(cplx(0.1, 0.5), mu, 12);
    const cplx viaLog = std::exp(log_polynomial_G(cplx(0.1, 0.5), mu, 12));
    REQUIRE(std::abs(cplx(static_cast<double>(direct.real()), static_cast<double>(direct.imag())) - viaLog) <
            1e-9 * std::abs(viaLog));
    REQUIRE_THROWS_AS(kernel_G_tilde(s, mu, 0), InvalidArgument);
}

TEST_CASE("K_w4 by contour quadrature matches its residue series") {
    auto mu = SpectralParameter::tempered(0.6, -1.4);
    for (double y : {0.05, 0.3, -0.2}) {
        const cplx a = kernel_K_w4(y, mu), b = kernel_K_w4_residues(y, mu);
        REQUIRE(std::abs(a - b) < 1e-7 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("Phi_w4 converges under node doubling and is conjugation symmetric") {
    auto h = standard_test_function(41);
    QuadratureSpec quad;
    auto r = phi_w4_many({0.5, -0.5}, h, quad);
    REQUIRE(converged(r[0], quad));
    REQUIRE(converged(r[1], quad));
    REQUIRE(std::abs(r[0].value - r[0].alternate) == Catch::Approx(r[0].error).margin(1e-300));
}

TEST_CASE("V matches its closed form and W converges") {
    auto mu = SpectralParameter::tempered(0.7, -0.2);
    auto V = weight_V_many({0.5, 3.0}, mu);
    for (int i = 0; i < 2; ++i) {
        const cplx closed = weight_V_closed(i == 0 ? 0.5 : 3.0, mu);
        REQUIRE(std::abs(V[static_cast<std::size_t>(i)].value - closed) < 1e-6 * std::abs(closed));
        REQUIRE(V[static_cast<std::size_t>(i)].error <= 1e-4 * std::abs(V[static_cast<std::size_t>(i)].value));
    }
    // far to the right of the origin V decays
    auto far = weight_V(1e8, mu);
    REQUIRE(std::abs(far.value) < 1e-3);
    QuadratureSpec bad;
    bad.height = 10.0;
    REQUIRE_THROWS_AS(bad.validate(), InvalidArgument);
    bad = QuadratureSpec{};
    bad.arm_angle = 0.4;
    REQUIRE_THROWS_AS(bad.validate(), InvalidArgument);
}
