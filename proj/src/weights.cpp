// Approximate functional equation weights.  On Re u = 2 the integrands exceed
// the final values by 25-45 orders of magnitude (G(u) has degree ~250), so
// everything here runs in 100-digit arithmetic.  The line integral uses the
// trapezoidal rule: the integrands are entire with Gaussian decay, where it
// converges faster than any fixed-order panel rule.

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "kforge/archimedean.hpp"
#include "kforge/errors.hpp"
#include "kforge/mp.hpp"

namespace kforge {

namespace {

using mp = mpfloat;
using mc = mpcomplex;

mc to_mc(cplx z) { return mc(mp(z.real()), mp(z.imag())); }
cplx to_c(const mc& z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

// G(u) = (1 - 4u^2) prod (shift - u)
struct GFactors {
    std::vector<mc> shifts;
};

GFactors g_factors(const SpectralParameter& mu, int A0) {
    const auto m = mu.values();
    GFactors f;
    for (int sg : {1, -1})
        for (int n = -A0; n <= A0; ++n) {
            if (n % 2 != 0) continue;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j)
                    f.shifts.push_back(mc(mp(0.5) + mp(n)) + to_mc(static_cast<double>(sg) * (m[i] + m[j])));
        }
    return f;
}

mc eval_G(const GFactors& f, const mc& u) {
    mc v = mc(mp(1)) - mp(4) * u * u;
    for (const mc& s : f.shifts) v *= s - u;
    return v;
}

mc mp_exp(const mc& z) {
    using std::exp;
    using std::cos;
    using std::sin;
    mp r = exp(z.real());
    return mc(r * cos(z.imag()), r * sin(z.imag()));
}

// log Gamma_R(w) - log Gamma_R(1 - w).  Duplication and reflection turn
// Gamma(w/2) / Gamma((1-w)/2) into 2^{1-w} pi^{-1/2} Gamma(w) cos(pi w / 2),
// one log-gamma per factor.
mc log_gamma_R_ratio(const mc& w) {
    using std::log;
    const mp pi = pi_v<mp>();
    const mc half(mp(0.5));
    const mc one(mp(1));
    const mc c = (mp_exp(mc(mp(0), pi) * w * half) + mp_exp(-mc(mp(0), pi) * w * half)) * half;
    return (half - w) * mc(log(pi)) + (one - w) * mc(log(mp(2))) - mc(log(pi) * mp(0.5)) +
           lgamma_stirling_t<mp>(w, 40.0, 30) + log(c);
}

enum class Which { V, W };

// x-independent part of the integrand, e^{u^2} G(+-u) [Gamma factors] / u, on
// the fine grid u = sigma + i k / npu, |k| <= T npu
struct LineData {
    std::vector<mc> u, f;
    mp step;
};

LineData line_data(Which which, const SpectralParameter& mu, double sigma, double T, int npu, const GFactors& gf) {
    const auto m = mu.values();
    LineData d;
    d.step = mp(1) / mp(npu);
    const int n = static_cast<int>(std::ceil(T * npu));
    if (n % 2) throw InvalidArgument("weight line needs an even node count");
    for (int k = -n; k <= n; ++k) {
        const mc u(mp(sigma), mp(k) * d.step);
        mc e = u * u;
        mc g;
        if (which == Which::V) {
            g = eval_G(gf, u);
        } else {
            g = eval_G(gf, -u);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) e += log_gamma_R_ratio(mc(mp(0.5)) + u + to_mc(m[i] + m[j]));
        }
        d.u.push_back(u);
        d.f.push_back(mp_exp(e) * g / u);
    }
    return d;
}

// trapezoid sums with every node and with every second node; du/(2 pi i) = d tau/(2 pi)
std::pair<mc, mc> line_sums(const LineData& d, double x) {
    using std::log;
    const mp lx = log(mp(x));
    mc fine(mp(0)), coarse(mp(0));
    const int n = static_cast<int>(d.u.size()) / 2;
    for (std::size_t i = 0; i < d.u.size(); ++i) {
        const mc t = mp_exp(-d.u[i] * lx) * d.f[i];
        fine += t;
        if ((static_cast<int>(i) - n) % 2 == 0) coarse += t;
    }
    const mp c = d.step / (mp(2) * pi_v<mp>());
    return {fine * c, coarse * (mp(2) * c)};
}

std::vector<WeightResult> weight_impl(Which which, const std::vector<double>& xs, const SpectralParameter& mu,
                                      const QuadratureSpec& quad, int A0) {
    for (double x : xs)
        if (!(x >= 1e-8 && x <= 1e8)) throw InvalidArgument("x must lie in [1e-8, 1e8]");
    quad.validate();
    if (quad.sigma_weight <= 0.0) throw InvalidArgument("the weight line must lie right of u = 0");
    const GFactors gf = g_factors(mu, A0);
    const mc G0 = eval_G(gf, mc(mp(0)));
    const mp absG0 = abs(G0);
    const LineData d = line_data(which, mu, quad.sigma_weight, quad.weight_height, 2 * quad.weight_nodes_per_unit, gf);
    std::vector<WeightResult> out;
    for (double x : xs) {
        auto [fine, coarse] = line_sums(d, x);
        WeightResult r;
        r.value = to_c(fine / absG0);
        r.error = static_cast<double>(abs(fine - coarse) / absG0);
        r.alternate = to_c(coarse / absG0);
        r.G0_phase = to_c(G0 / absG0);
        r.log_abs_G0 = static_cast<double>(log(absG0));
        out.push_back(r);
    }
    return out;
}

}  // namespace

WeightResult weight_V(double x, const SpectralParameter& mu, const QuadratureSpec& quad, int A0) {
    return weight_impl(Which::V, {x}, mu, quad, A0).front();
}

WeightResult weight_W(double x, const SpectralParameter& mu, const QuadratureSpec& quad, int A0) {
    return weight_impl(Which::W, {x}, mu, quad, A0).front();
}

std::vector<WeightResult> weight_V_many(const std::vector<double>& xs, const SpectralParameter& mu,
                                        const QuadratureSpec& quad, int A0) {
    return weight_impl(Which::V, xs, mu, quad, A0);
}

std::vector<WeightResult> weight_W_many(const std::vector<double>& xs, const SpectralParameter& mu,
                                        const QuadratureSpec& quad, int A0) {
    return weight_impl(Which::W, xs, mu, quad, A0);
}

cplx weight_V_closed(double x, const SpectralParameter& mu, int A0) {
    using std::exp;
    using std::log;
    using std::sqrt;
    if (!(x > 0.0)) throw InvalidArgument("x must be positive");
    const GFactors gf = g_factors(mu, A0);
    // coefficients of G(u) = sum c_k u^k
    std::vector<mc> c{mc(mp(1)), mc(mp(0)), mc(mp(-4))};
    for (const mc& s : gf.shifts) {
        std::vector<mc> next(c.size() + 1, mc(mp(0)));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k] * s;
            next[k + 1] -= c[k];
        }
        c.swap(next);
    }
    const mp absG0 = abs(c[0]);
    const mp L = log(mp(x));
    // int u^k e^{u^2 - uL} du/(2 pi i) = 2^{-k} H_k(L/2) e^{-L^2/4} / (2 sqrt pi)
    const mp g0 = exp(-L * L / mp(4)) / (mp(2) * sqrt(pi_v<mp>()));
    const mp xh = L / mp(2);
    std::vector<mp> H{mp(1), mp(2) * xh};
    while (H.size() < c.size()) {
        const std::size_t k = H.size() - 1;
        H.push_back(mp(2) * xh * H[k] - mp(2 * k) * H[k - 1]);
    }
    mc acc = c[0] * (boost::math::erfc(xh) / mp(2));
    mp pow2 = mp(1);
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        acc += c[k + 1] * (H[k] / pow2 * g0);
        pow2 *= mp(2);
    }
    return to_c(acc / absG0);
}

}  // namespace kforge
