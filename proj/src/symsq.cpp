#include "kforge/symsq.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kforge/archimedean.hpp"
#include "kforge/errors.hpp"
#include "kforge/gamma.hpp"

namespace kforge {

namespace {

cplx p_minus_s(i64 p, cplx s) { return std::exp(-s * std::log(static_cast<double>(p))); }

std::array<cplx, 6> sym2_products(const SatakeTriple& t) {
    return {t.alpha * t.alpha, t.beta * t.beta, t.gamma * t.gamma,
            t.alpha * t.beta,  t.alpha * t.gamma, t.beta * t.gamma};
}

}  // namespace

std::vector<cplx> symsq_coefficients(const CoefficientSource& src, i64 N, i64 X) {
    if (X < 1 || X > 1'000'000) throw InvalidArgument("cutoff must lie in [1, 1e6]");
    std::vector<cplx> out(static_cast<std::size_t>(X + 1), 0.0);
    for (i64 a = 1; a * a * a <= X; ++a) {
        if (gcd(a, N) != 1) continue;
        const i64 a3 = a * a * a;
        for (i64 b = 1; a3 * b * b <= X; ++b) {
            const i64 ab = a3 * b * b;
            for (i64 c = 1; ab * c <= X; ++c) out[static_cast<std::size_t>(ab * c)] += src(b * b, c * c);
        }
    }
    return out;
}

cplx symsq_local_factor(const SatakeTriple& t, cplx s) {
    const cplx X = p_minus_s(t.p, s);
    if (t.ramified()) {
        // gamma = 0 leaves alpha^2, beta^2, alpha beta (or the permuted analogue)
        cplx v = 1.0;
        for (cplx x : sym2_products(t))
            if (x != 0.0) v /= (1.0 - x * X);
        return v;
    }
    cplx v = 1.0;
    for (cplx x : sym2_products(t)) v /= (1.0 - x * X);
    return v;
}

cplx symsq_local_series(const SatakeTriple& t, cplx s, int J) {
    const cplx X = p_minus_s(t.p, s);
    std::vector<cplx> Xpow(static_cast<std::size_t>(3 * J + 1));
    Xpow[0] = 1.0;
    for (std::size_t k = 1; k < Xpow.size(); ++k) Xpow[k] = Xpow[k - 1] * X;
    cplx series = 0.0;
    for (int j = 0; j <= J; ++j)
        for (int i = 0; i <= J; ++i)
            series += schur_coefficient(t, 2 * j, 2 * i) * Xpow[static_cast<std::size_t>(i + 2 * j)];
    if (t.ramified()) return series;
    // the k-sum restores the partitions with three nonzero rows
    const cplx abc2 = t.alpha * t.beta * t.gamma * t.alpha * t.beta * t.gamma;
    cplx ksum = 0.0, w = 1.0;
    for (int k = 0; k <= J; ++k, w *= abc2) ksum += w * Xpow[static_cast<std::size_t>(3 * k)];
    return ksum * series;
}

cplx symsq_ramified_display(i64 p, cplx rho, cplx s) {
    const double pd = static_cast<double>(p);
    auto pw = [&](cplx e) { return std::exp(e * std::log(pd)); };
    return 1.0 / ((1.0 - pw(-2.0 * rho) / pw(1.0 + s)) * (1.0 - pw(-rho) / pw(0.5 + s)) *
                  (1.0 - pw(4.0 * rho) / pw(s)));
}

VerificationReport check_local_factor(const SatakeTriple& t, cplx s, int J) {
    Stopwatch sw;
    if (s.real() < 0.6) throw InvalidArgument("check_local_factor needs Re s >= 0.6");
    cplx lhs = symsq_local_series(t, s, J);
    cplx rhs = symsq_local_factor(t, s);
    std::ostringstream in;
    in << "p=" << t.p << " alpha=" << t.alpha << " beta=" << t.beta << " gamma=" << t.gamma << " s=" << s
       << " J=" << J;
    auto r = make_report("symsq-factors",
                         t.ramified() ? "ramified sym^2 local factor (3 factors)"
                                      : "unramified sym^2 local factor (6 factors)",
                         in.str(), lhs, rhs, 1e-8);
    r.ms = sw.ms();
    return r;
}

cplx archimedean_factor(const SpectralParameter& mu, cplx u) {
    const auto m = mu.values();
    cplx acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) acc += log_gamma_R(0.5 + u - m[i] - m[j]);
    return std::exp(acc);
}

Lambda2Table lambda2_table(const SatakeTriple& t2) {
    if (t2.p != 2) throw InvalidArgument("lambda table needs data at p = 2");
    Lambda2Table tab;
    tab.lambda[0] = 1.0;
    tab.lambda[1] = schur_coefficient(t2, 0, 2);                                // A(1,4)
    tab.lambda[2] = schur_coefficient(t2, 1, 2);                                // A(2,4)
    tab.lambda[3] = schur_coefficient(t2, 3, 0) + schur_coefficient(t2, 0, 3);  // A(8,1)+A(1,8)
    tab.lambda[4] = schur_coefficient(t2, 2, 1);                                // A(4,2)
    tab.lambda[5] = schur_coefficient(t2, 2, 0);                                // A(4,1)
    tab.lambda[6] = 1.0;
    return tab;
}

cplx lambda2_inverse_factor(const Lambda2Table& tab, cplx v) {
    const cplx X = p_minus_s(2, v);
    cplx acc = 0.0, Xj = 1.0;
    for (int j = 0; j <= 6; ++j) {
        acc += (j % 2 == 0 ? 1.0 : -1.0) * std::conj(tab.lambda[static_cast<std::size_t>(j)]) * Xj;
        Xj *= X;
    }
    return acc;
}

cplx lambda2_product(const SatakeTriple& t2, cplx v) {
    const cplx X = p_minus_s(2, v);
    cplx acc = 1.0;
    for (cplx x : sym2_products(t2)) acc *= 1.0 - std::conj(x) * X;
    return acc;
}

VerificationReport check_lambda_table(const SatakeTriple& t2, cplx v) {
    Stopwatch sw;
    auto tab = lambda2_table(t2);
    std::ostringstream in;
    in << "alpha=" << t2.alpha << " beta=" << t2.beta << " gamma=" << t2.gamma << " v=" << v;
    auto r = make_report("symsq-factors", "lambda(2^j) table against the inverse local factor at 2", in.str(),
                         lambda2_inverse_factor(tab, v), lambda2_product(t2, v), 1e-9);
    r.ms = sw.ms();
    return r;
}

cplx lstar_modification(const CoefficientSource& src, cplx s, i64 truncation) {
    const cplx inv = lambda2_inverse_factor(lambda2_table(src.at(2)), s);
    if (std::abs(inv) < 1e-13) return 0.0;
    if (s.real() < 0.6) throw InvalidArgument("Euler product needs Re s >= 0.6");
    cplx L = 1.0;
    for (i64 p : primes_upto(truncation)) {
        if (p == 2) continue;
        L *= symsq_local_factor(src.at(p), s);
    }
    return L * inv;
}

i64 conductor(i64 N) {
    if (N < 1) throw InvalidArgument("level must be positive");
    if (!is_squarefree(N)) throw NotSquarefree(std::to_string(N));
    return N * N * N;
}

RootNumber root_number(const std::vector<std::pair<i64, cplx>>& level_primes) {
    RootNumber out{1.0, 1.0};
    for (auto [p, rho] : level_primes) {
        if (p < 3 || !is_prime(p)) throw InvalidArgument("level primes must be odd primes");
        SatakeTriple t = SatakeTriple::ramified_steinberg(p, rho);
        const double pd = static_cast<double>(p);
        out.epsilon *= -std::pow(pd, 1.5) * std::conj(schur_coefficient(t, 3, 0));
        out.alternative *= -std::sqrt(pd) * std::conj(schur_coefficient(t, 1, 1)) + 1.0 / std::sqrt(pd);
    }
    if (std::abs(out.epsilon - out.alternative) > 1e-10)
        throw ExpressionMismatch("root number expressions disagree");
    return out;
}

PoleScanReport pole_scan(const CoefficientSource& src, const std::vector<cplx>& grid, i64 P, double threshold) {
    PoleScanReport rep;
    auto primes = primes_upto(4 * P);
    for (cplx s : grid) {
        PoleScanPoint pt{s, 1.0, 1.0, 0.0, false};
        for (i64 p : primes) {
            if (p == 2) continue;
            cplx f = symsq_local_factor(src.at(p), s);
            if (p <= P) pt.value *= f;
            pt.value_longer *= f;
        }
        pt.growth = std::abs(pt.value_longer) / std::abs(pt.value);
        pt.flagged = !(pt.growth <= threshold) || !std::isfinite(std::abs(pt.value_longer));
        rep.bounded = rep.bounded && !pt.flagged;
        rep.points.push_back(pt);
    }
    return rep;
}

CoefficientSource sym2_lift_source(const std::vector<i64>& primes, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::map<i64, SatakeTriple> local;
    for (i64 p : primes) {
        double th = 2.0 * std::numbers::pi * uniform01(gen());
        cplx a = std::polar(1.0, th);
        local[p] = SatakeTriple::unramified(p, a * a, 1.0, std::conj(a * a));
    }
    return CoefficientSource(std::move(local));
}

}  // namespace kforge
