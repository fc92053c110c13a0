#pragma once

// Multiprecision helpers.  Only the approximate functional equation weights
// need them: their integrands peak far above the final value.

#include <array>
#include <cstdlib>
#include <complex>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace kforge {

using mpfloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                              boost::multiprecision::et_off>;
using mpcomplex = std::complex<mpfloat>;

template <class T>
T pi_v() {
    return boost::math::constants::pi<T>();
}

// log sin(pi z), stable for large |Im z|; imaginary part modulo 2 pi
template <class T>
std::complex<T> log_sin_pi(const std::complex<T>& z) {
    using std::exp;
    using std::log;
    const T pi = pi_v<T>();
    const std::complex<T> I(T(0), T(1));
    const std::complex<T> two_i(T(0), T(2));
    if (z.imag() >= 0) {
        // sin(pi z) = i e^{-i pi z} (1 - e^{2 i pi z}) / 2
        std::complex<T> w = exp(two_i * pi * z);
        return -I * pi * z + log(std::complex<T>(T(1)) - w) + log(std::complex<T>(T(0), T(0.5)));
    }
    // sin(pi z) = -i e^{i pi z} (1 - e^{-2 i pi z}) / 2
    std::complex<T> w = exp(-two_i * pi * z);
    return I * pi * z + log(std::complex<T>(T(1)) - w) + log(std::complex<T>(T(0), T(-0.5)));
}

// Bernoulli numbers B_2 .. B_60 as exact ratios
struct BernoulliRatio {
    const char* num;
    const char* den;
};
const std::vector<BernoulliRatio>& bernoulli_table();

template <class T>
T parse_real(const char* s) {
    return T(s);
}
template <>
inline double parse_real<double>(const char* s) {
    return std::strtod(s, nullptr);
}

// log Gamma via upward shift and the Stirling series; reflection below 1/2
template <class T>
std::complex<T> lgamma_stirling_t(std::complex<T> z, double shift_to, int terms) {
    using std::log;
    const T pi = pi_v<T>();
    if (z.real() < T(0.5)) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return log(std::complex<T>(pi)) - log_sin_pi(z) -
               lgamma_stirling_t<T>(std::complex<T>(T(1)) - z, shift_to, terms);
    }
    std::complex<T> acc(T(0));
    std::complex<T> prod(T(1));
    int count = 0;
    while (abs(z) < T(shift_to)) {
        prod *= z;
        z += T(1);
        if (++count % 8 == 0) {
            acc += log(prod);
            prod = std::complex<T>(T(1));
        }
    }
    acc += log(prod);
    std::complex<T> res = (z - T(0.5)) * log(z) - z + log(T(2) * pi) / T(2);
    std::complex<T> zinv = std::complex<T>(T(1)) / z;
    std::complex<T> z2inv = zinv * zinv;
    std::complex<T> zp = zinv;
    // B_{2k} / (2k (2k - 1)), parsed once per scalar type
    static const std::vector<T> coef = [] {
        std::vector<T> c;
        int k = 1;
        for (const auto& b : bernoulli_table()) {
            c.push_back(parse_real<T>(b.num) / parse_real<T>(b.den) / T((2 * k) * (2 * k - 1)));
            ++k;
        }
        return c;
    }();
    for (int k = 1; k <= terms && k <= static_cast<int>(coef.size()); ++k) {
        res += zp * coef[static_cast<std::size_t>(k - 1)];
        zp *= z2inv;
    }
    return res - acc;
}

std::array<mpfloat, 2> to_pair(const mpcomplex& z);

}  // namespace kforge
