#include "kforge/gamma.hpp"

#include <cmath>
#include <numbers>

#include "kforge/errors.hpp"
#include "kforge/mp.hpp"

namespace kforge {

const std::vector<BernoulliRatio>& bernoulli_table() {
    static const std::vector<BernoulliRatio> table = {
        {"1", "6"},
        {"-1", "30"},
        {"1", "42"},
        {"-1", "30"},
        {"5", "66"},
        {"-691", "2730"},
        {"7", "6"},
        {"-3617", "510"},
        {"43867", "798"},
        {"-174611", "330"},
        {"854513", "138"},
        {"-236364091", "2730"},
        {"8553103", "6"},
        {"-23749461029", "870"},
        {"8615841276005", "14322"},
        {"-7709321041217", "510"},
        {"2577687858367", "6"},
        {"-26315271553053477373", "1919190"},
        {"2929993913841559", "6"},
        {"-261082718496449122051", "13530"},
        {"1520097643918070802691", "1806"},
        {"-27833269579301024235023", "690"},
        {"596451111593912163277961", "282"},
        {"-5609403368997817686249127547", "46410"},
        {"495057205241079648212477525", "66"},
        {"-801165718135489957347924991853", "1590"},
        {"29149963634884862421418123812691", "798"},
        {"-2479392929313226753685415739663229", "870"},
        {"84483613348880041862046775994036021", "354"},
        {"-1215233140483755572040304994079820246041491", "56786730"},
    };
    return table;
}

std::array<mpfloat, 2> to_pair(const mpcomplex& z) { return {z.real(), z.imag()}; }

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                    771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_right(cplx z) {
    z -= 1.0;
    cplx x = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) x += kLanczosCoef[i] / (z + static_cast<double>(i));
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx lgamma_lanczos(cplx z) {
    if (near_gamma_pole(z, 0.0) && z.imag() == 0.0 && z.real() == std::nearbyint(z.real()))
        throw PoleHit("Gamma pole at " + std::to_string(z.real()));
    if (z.real() < 0.5) return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_right(1.0 - z);
    return lanczos_right(z);
}

cplx gamma_lanczos(cplx z) { return std::exp(lgamma_lanczos(z)); }

cplx lgamma_stirling(cplx z) { return lgamma_stirling_t<double>(z, 16.0, 12); }

bool near_gamma_pole(cplx z, double tol) {
    double n = std::nearbyint(z.real());
    return n <= 0.0 && std::abs(z - cplx(n, 0.0)) <= tol;
}

cplx log_gamma_R(cplx s) {
    if (near_gamma_pole(0.5 * s)) throw PoleHit("Gamma_R pole near s = " + std::to_string(s.real()));
    return -0.5 * s * std::log(std::numbers::pi) + lgamma_lanczos(0.5 * s);
}

cplx gamma_R(cplx s) { return std::exp(log_gamma_R(s)); }

}  // namespace kforge
