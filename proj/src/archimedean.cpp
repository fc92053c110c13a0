#include "kforge/archimedean.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kforge/errors.hpp"
#include "kforge/gamma.hpp"

namespace kforge {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_odd_integer(cplx d, double tol) {
    double n = std::nearbyint(d.real());
    if (std::fmod(std::abs(n), 2.0) != 1.0) {
        // nearest integer even: the closest odd one is at distance >= 1 - |frac|
        double lo = n - 1.0, hi = n + 1.0;
        return std::abs(d - cplx(lo, 0.0)) <= tol || std::abs(d - cplx(hi, 0.0)) <= tol;
    }
    return std::abs(d - cplx(n, 0.0)) <= tol;
}

// Gamma(a) / Gamma(b); zero when b sits on a pole of Gamma
cplx gamma_ratio(cplx a, cplx b) {
    if (near_gamma_pole(a)) throw PoleHit("Gamma pole in kernel numerator");
    if (near_gamma_pole(b, 1e-14)) return 0.0;
    return std::exp(lgamma_lanczos(a) - lgamma_lanczos(b));
}

}  // namespace

SpectralParameter SpectralParameter::make(cplx a, cplx b, cplx c, bool automorphic) {
    SpectralParameter mu{a, b, c};
    if (std::abs(a + b + c) > 1e-12) throw InvalidArgument("spectral parameters must sum to zero");
    if (automorphic && !mu.is_automorphic()) throw InvalidArgument("spectral parameter is not automorphic");
    return mu;
}

SpectralParameter SpectralParameter::tempered(double t1, double t2) {
    return {cplx(0.0, t1), cplx(0.0, t2), cplx(0.0, -t1 - t2)};
}

double SpectralParameter::norm() const {
    return std::sqrt(std::norm(mu1) + std::norm(mu2) + std::norm(mu3));
}

bool SpectralParameter::is_automorphic(double tol) const {
    auto m = values();
    for (cplx x : m)
        if (std::abs(x.real()) > 5.0 / 14.0 + tol) return false;
    // {mu} = {-conj mu} as multisets
    std::array<bool, 3> used{false, false, false};
    for (cplx x : m) {
        bool found = false;
        for (int j = 0; j < 3 && !found; ++j)
            if (!used[static_cast<std::size_t>(j)] && std::abs(-std::conj(x) - m[static_cast<std::size_t>(j)]) <= tol)
                used[static_cast<std::size_t>(j)] = found = true;
        if (!found) return false;
    }
    return true;
}

cplx spec_measure(const SpectralParameter& mu) {
    const cplx d12 = mu.mu1 - mu.mu2, d23 = mu.mu2 - mu.mu3, d31 = mu.mu3 - mu.mu1;
    for (cplx d : {d12, d23, d31})
        if (near_odd_integer(d, 1e-9)) throw TanPole("tan(pi/2 d) with d odd");
    return d12 * d23 * d31 * std::tan(0.5 * kPi * d12) * std::tan(0.5 * kPi * d23) *
           std::tan(0.5 * kPi * d31);
}

cplx TestFunctionSpec::operator()(const SpectralParameter& mu) const {
    return std::exp(log_h(mu) - log_scale);
}

namespace {

cplx standard_log_h(int A0, const SpectralParameter& mu) {
    const auto m = mu.values();
    cplx acc = cplx(0.0, kPi);  // leading minus sign
    for (cplx x : m) acc += x * x;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int n = -A0; n <= A0; ++n)
                if (n % 2 != 0) acc += std::log(m[i] - m[j] - static_cast<double>(n));
    for (int sg : {1, -1})
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                for (int n = -A0; n <= A0; ++n)
                    if (n % 2 == 0) acc += std::log(0.5 + static_cast<double>(sg) * (m[i] + m[j]) - static_cast<double>(n));
    return acc;
}

}  // namespace

TestFunctionSpec standard_test_function(int A0) {
    if (A0 < 10) throw InvalidArgument("A0 must be at least 10");
    TestFunctionSpec h;
    h.A0 = A0;
    h.kind = TestFunctionKind::Standard;
    h.log_h = [A0](const SpectralParameter& mu) { return standard_log_h(A0, mu); };
    h.log_scale = standard_log_h(A0, SpectralParameter{}).real();
    return h;
}

cplx standard_test_function_direct(int A0, const SpectralParameter& mu) {
    using lc = std::complex<long double>;
    auto raw = [A0](const SpectralParameter& p) {
        const auto m0 = p.values();
        std::array<lc, 3> m{lc(m0[0]), lc(m0[1]), lc(m0[2])};
        lc v = -std::exp(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
        for (int n = -A0; n <= A0; n += 1) {
            const long double nd = n;
            if (n % 2 != 0) {
                v *= (m[0] - m[1] - nd) * (m[1] - m[2] - nd) * (m[0] - m[2] - nd);
            } else {
                for (int i = 0; i < 3; ++i)
                    for (int j = i; j < 3; ++j) v *= (0.5L + m[i] + m[j] - nd) * (0.5L - m[i] - m[j] - nd);
            }
        }
        return v;
    };
    lc v = raw(mu) / std::abs(raw(SpectralParameter{}));
    return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

cplx kernel_G_tilde(cplx s, const SpectralParameter& mu, int sign) {
    if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
    cplx a = 1.0, b = 1.0;
    for (cplx m : mu.values()) {
        a *= gamma_ratio(0.5 * (s - m), 0.5 * (1.0 - s + m));
        b *= gamma_ratio(0.5 * (1.0 + s - m), 0.5 * (2.0 - s + m));
    }
    const cplx pref = std::exp(-3.0 * s * std::log(kPi)) / (12288.0 * std::pow(kPi, 3.5));
    return pref * (a + static_cast<double>(sign) * cplx(0.0, 1.0) * b);
}

cplx kernel_G_sym(cplx s1, cplx s2, const SpectralParameter& mu, int eps1, int eps2) {
    if ((eps1 != 1 && eps1 != -1) || (eps2 != 1 && eps2 != -1)) throw InvalidArgument("signs must be +1 or -1");
    cplx total = 0.0;
    for (int d1 = 0; d1 <= 1; ++d1)
        for (int d2 = 0; d2 <= 1; ++d2) {
            const int d3 = (d1 + d2) % 2;
            double c = (d1 ? eps1 : 1) * (d2 ? eps2 : 1) * ((d1 && d2) ? -1 : 1);
            const double D1 = d1, D2 = d2, D3 = d3;
            cplx term = gamma_ratio(0.5 * (1.0 + D3 - s1 - s2), 0.5 * (D3 + s1 + s2));
            for (cplx m : mu.values())
                term *= gamma_ratio(0.5 * (D1 + s1 - m), 0.5 * (1.0 + D1 - s1 + m)) *
                        gamma_ratio(0.5 * (D2 + s2 + m), 0.5 * (1.0 + D2 - s2 - m));
            total += c * term;
        }
    return total / (1024.0 * std::pow(kPi, 2.5));
}

cplx log_polynomial_G(cplx u, const SpectralParameter& mu, int A0) {
    const auto m = mu.values();
    cplx acc = std::log(1.0 - 4.0 * u * u);
    for (int sg : {1, -1})
        for (int n = -A0; n <= A0; ++n) {
            if (n % 2 != 0) continue;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j)
                    acc += std::log(0.5 - u + static_cast<double>(sg) * (m[i] + m[j]) + static_cast<double>(n));
        }
    return acc;
}

std::complex<long double> polynomial_G(cplx u, const SpectralParameter& mu, int A0) {
    using lc = std::complex<long double>;
    const auto m0 = mu.values();
    const lc U(u);
    lc v = 1.0L - 4.0L * U * U;
    for (int sg : {1, -1})
        for (int n = -A0; n <= A0; ++n) {
            if (n % 2 != 0) continue;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j)
                    v *= 0.5L - U + static_cast<long double>(sg) * (lc(m0[i]) + lc(m0[j])) + static_cast<long double>(n);
        }
    return v;
}

void QuadratureSpec::validate() const {
    if (height < 20.0) throw InvalidArgument("quadrature height must be >= 20");
    if (weight_height < 20.0) throw InvalidArgument("weight line height must be >= 20");
    if (weight_nodes_per_unit < 2) throw InvalidArgument("need at least 2 weight nodes per unit");
    if (2.0 * height * nodes_per_unit < 200.0 || 2.0 * height * nodes_per_unit_w6 < 200.0)
        throw InvalidArgument("need at least 200 nodes per line");
    if (lattice_step <= 0.0 || lattice_step_w6 <= 0.0 || lattice_decades <= 0.0)
        throw InvalidArgument("mu lattice parameters must be positive");
    if (arm_angle <= 0.5 * kPi || arm_angle >= kPi) throw InvalidArgument("arm angle must lie in (pi/2, pi)");
}

}  // namespace kforge
