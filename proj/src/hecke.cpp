#include "kforge/hecke.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

cplx cpow_real(double base, cplx e) { return std::exp(e * std::log(base)); }

void require_imaginary(cplx z, const char* what) {
    if (std::abs(z.real()) >= 1e-12) throw InvalidArgument(std::string(what) + " must be purely imaginary");
}

bool multiset_close(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b, double tol) {
    std::array<int, 3> perm{0, 1, 2};
    do {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) ok = std::abs(a[i] - b[perm[i]]) < tol;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

SatakeTriple SatakeTriple::unramified(i64 p, cplx a, cplx b, cplx g) {
    if (!is_prime(p)) throw InvalidArgument("Satake parameters need a prime");
    if (std::abs(a * b * g - 1.0) >= 1e-10) throw InvalidArgument("alpha beta gamma must equal 1");
    if (a == 0.0 || b == 0.0 || g == 0.0) throw InvalidArgument("unramified parameters are nonzero");
    std::array<cplx, 3> inv{1.0 / a, 1.0 / b, 1.0 / g};
    std::array<cplx, 3> cj{std::conj(a), std::conj(b), std::conj(g)};
    if (!multiset_close(inv, cj, 1e-10)) throw InvalidArgument("parameters are not unitary");
    SatakeTriple t;
    t.p = p;
    t.alpha = a;
    t.beta = b;
    t.gamma = g;
    t.kind = SatakeKind::Unramified;
    return t;
}

SatakeTriple SatakeTriple::tempered(i64 p, double theta1, double theta2) {
    cplx a = std::polar(1.0, theta1), b = std::polar(1.0, theta2);
    return unramified(p, a, b, std::conj(a * b) / std::norm(a * b));
}

SatakeTriple SatakeTriple::ramified_steinberg(i64 p, cplx rho) {
    if (!is_prime(p)) throw InvalidArgument("Satake parameters need a prime");
    require_imaginary(rho, "rho");
    SatakeTriple t;
    t.p = p;
    t.kind = SatakeKind::RamifiedSteinberg;
    t.rho = cplx(0.0, rho.imag());
    t.alpha = cpow_real(static_cast<double>(p), -0.5 - t.rho);
    t.beta = cpow_real(static_cast<double>(p), 2.0 * t.rho);
    t.gamma = 0.0;
    return t;
}

SatakeTriple SatakeTriple::eisenstein_min(i64 p, cplx s1, cplx s2) {
    if (!is_prime(p)) throw InvalidArgument("Satake parameters need a prime");
    require_imaginary(s1, "s1");
    require_imaginary(s2, "s2");
    SatakeTriple t;
    t.p = p;
    t.kind = SatakeKind::EisensteinMin;
    t.s1 = cplx(0.0, s1.imag());
    t.s2 = cplx(0.0, s2.imag());
    const double pd = static_cast<double>(p);
    t.alpha = cpow_real(pd, t.s1);
    t.beta = cpow_real(pd, t.s2);
    t.gamma = cpow_real(pd, -t.s1 - t.s2);
    return t;
}

SatakeTriple SatakeTriple::eisenstein_max(i64 p, cplx a_p, cplx b_p, cplx s) {
    if (!is_prime(p)) throw InvalidArgument("Satake parameters need a prime");
    require_imaginary(s, "s");
    SatakeTriple t;
    t.p = p;
    t.kind = SatakeKind::EisensteinMax;
    t.a_p = a_p;
    t.b_p = b_p;
    t.s = cplx(0.0, s.imag());
    const double pd = static_cast<double>(p);
    t.alpha = a_p * cpow_real(pd, t.s);
    t.beta = b_p * cpow_real(pd, t.s);
    t.gamma = cpow_real(pd, -2.0 * t.s);
    return t;
}

bool SatakeTriple::ramified() const {
    if (kind == SatakeKind::RamifiedSteinberg) return true;
    if (kind == SatakeKind::EisensteinMax) return a_p == 0.0 || b_p == 0.0;
    return false;
}

cplx schur_polynomial(cplx x1, cplx x2, cplx x3, int k, int l) {
    if (k < 0 || l < 0) return 0.0;
    if (k > kSchurMaxIndex || l > kSchurMaxIndex)
        throw InvalidArgument("Schur index above the overflow guard");
    const int l1 = k + l, l2 = k, total = l1 + l2;
    // h[m] = complete homogeneous polynomial of degree m in (x2, x3)
    std::vector<cplx> h(static_cast<std::size_t>(l1 + 1)), p1(static_cast<std::size_t>(total + 1)),
        p23(static_cast<std::size_t>(l2 + 1));
    cplx x3pow = 1.0;
    h[0] = 1.0;
    for (int m = 1; m <= l1; ++m) {
        x3pow *= x3;
        h[static_cast<std::size_t>(m)] = x2 * h[static_cast<std::size_t>(m - 1)] + x3pow;
    }
    p1[0] = 1.0;
    for (int m = 1; m <= total; ++m) p1[static_cast<std::size_t>(m)] = p1[static_cast<std::size_t>(m - 1)] * x1;
    p23[0] = 1.0;
    for (int m = 1; m <= l2; ++m) p23[static_cast<std::size_t>(m)] = p23[static_cast<std::size_t>(m - 1)] * x2 * x3;
    // interlacing partitions (a, b) with l1 >= a >= l2 >= b >= 0
    cplx acc = 0.0;
    for (int a = l2; a <= l1; ++a)
        for (int b = 0; b <= l2; ++b)
            acc += p1[static_cast<std::size_t>(total - a - b)] * p23[static_cast<std::size_t>(b)] *
                   h[static_cast<std::size_t>(a - b)];
    return acc;
}

cplx schur_coefficient(const SatakeTriple& t, int k, int l) {
    return schur_polynomial(t.alpha, t.beta, t.gamma, k, l);
}

cplx schur_bialternant(cplx x1, cplx x2, cplx x3, int k, int l) {
    auto det3 = [](const std::array<std::array<cplx, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    std::array<cplx, 3> x{x1, x2, x3};
    std::array<int, 3> e{k + l + 2, k + 1, 0};
    std::array<std::array<cplx, 3>, 3> num{}, den{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            num[r][c] = std::pow(x[c], e[r]);
            den[r][c] = std::pow(x[c], 2 - r);
        }
    cplx d = det3(den);
    if (std::abs(d) < 1e-12) throw DegenerateParameters("Vandermonde determinant below 1e-12");
    return det3(num) / d;
}

CoefficientSource::CoefficientSource(std::map<i64, SatakeTriple> local) : local_(std::move(local)) {}

CoefficientSource::CoefficientSource(const CoefficientSource& other) : local_(other.local_) {}

CoefficientSource& CoefficientSource::operator=(const CoefficientSource& other) {
    if (this != &other) {
        std::unique_lock lock(mu_);
        local_ = other.local_;
        memo_.clear();
    }
    return *this;
}

void CoefficientSource::set(const SatakeTriple& t) {
    std::unique_lock lock(mu_);
    local_[t.p] = t;
    memo_.clear();
}

const SatakeTriple& CoefficientSource::at(i64 p) const {
    auto it = local_.find(p);
    if (it == local_.end()) throw MissingPrime("no Satake parameters at " + std::to_string(p));
    return it->second;
}

cplx CoefficientSource::local_coefficient(i64 p, int k, int l) const {
    return schur_coefficient(at(p), k, l);
}

cplx CoefficientSource::direct(i64 m, i64 n) const {
    if (m < 1 || n < 1) throw InvalidArgument("coefficient indices must be positive");
    std::set<i64> primes;
    for (auto [p, e] : factorize(m)) primes.insert(p);
    for (auto [p, e] : factorize(n)) primes.insert(p);
    cplx v = 1.0;
    for (i64 p : primes) v *= local_coefficient(p, valuation(m, p), valuation(n, p));
    return v;
}

cplx CoefficientSource::operator()(i64 m, i64 n) const {
    auto key = std::make_pair(m, n);
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    cplx v = direct(m, n);
    std::unique_lock lock(mu_);
    memo_.emplace(key, v);
    return v;
}

cplx coefficient(const CoefficientSource& src, i64 m, i64 n) { return src(m, n); }

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

CoefficientSource random_tempered_source(const std::vector<i64>& primes, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::map<i64, SatakeTriple> local;
    for (i64 p : primes) {
        double t1 = 2.0 * std::numbers::pi * uniform01(gen());
        double t2 = 2.0 * std::numbers::pi * uniform01(gen());
        local[p] = SatakeTriple::tempered(p, t1, t2);
    }
    return CoefficientSource(std::move(local));
}

namespace {

double rel_tol(double scale) { return 1e-9 * std::max(1.0, scale); }

}  // namespace

VerificationReport check_hecke_mn(const CoefficientSource& src, i64 m, i64 n1, i64 n2) {
    Stopwatch sw;
    cplx lhs = src(m, n1 * n2);
    cplx rhs = 0.0;
    double scale = std::abs(lhs);
    for (i64 c : divisors(n2)) {
        if (n1 % c != 0) continue;
        for (i64 b : divisors(n1 / c)) {
            i64 a = n1 / c / b;
            if ((m * c) % b != 0) continue;
            int mu = mobius(b) * mobius(c);
            if (mu == 0) continue;
            cplx term = static_cast<double>(mu) * src(m * c / b, n2 / c) * src(1, a);
            scale += std::abs(term);
            rhs += term;
        }
    }
    std::ostringstream in;
    in << "m=" << m << " n1=" << n1 << " n2=" << n2;
    auto r = make_report("hecke-relations", "A(m, n1 n2) via Moebius-weighted products", in.str(), lhs, rhs,
                         rel_tol(scale));
    r.ms = sw.ms();
    return r;
}

VerificationReport check_hecke_n1(const CoefficientSource& src, i64 n, i64 m1, i64 m2) {
    Stopwatch sw;
    cplx lhs = src(n, 1) * src(m1, m2);
    cplx rhs = 0.0;
    double scale = std::abs(lhs);
    for (i64 d1 : divisors(n)) {
        if (m1 % d1 != 0) continue;
        for (i64 d2 : divisors(n / d1)) {
            if (m2 % d2 != 0) continue;
            i64 d0 = n / d1 / d2;
            cplx term = src(m1 * d0 / d1, m2 * d1 / d2);
            scale += std::abs(term);
            rhs += term;
        }
    }
    std::ostringstream in;
    in << "n=" << n << " m1=" << m1 << " m2=" << m2;
    auto r = make_report("hecke-relations", "A(n,1) A(m1,m2) as a divisor sum", in.str(), lhs, rhs,
                         rel_tol(scale));
    r.ms = sw.ms();
    return r;
}

VerificationReport check_hecke_1n(const CoefficientSource& src, i64 n, i64 m1, i64 m2) {
    Stopwatch sw;
    cplx lhs = src(1, n) * src(m1, m2);
    cplx rhs = 0.0;
    double scale = std::abs(lhs);
    for (i64 d1 : divisors(n)) {
        if (m1 % d1 != 0) continue;
        for (i64 d2 : divisors(n / d1)) {
            if (m2 % d2 != 0) continue;
            i64 d0 = n / d1 / d2;
            cplx term = src(m1 * d2 / d1, m2 * d0 / d2);
            scale += std::abs(term);
            rhs += term;
        }
    }
    std::ostringstream in;
    in << "n=" << n << " m1=" << m1 << " m2=" << m2;
    auto r = make_report("hecke-relations", "A(1,n) A(m1,m2) as a divisor sum", in.str(), lhs, rhs,
                         rel_tol(scale));
    r.ms = sw.ms();
    return r;
}

VerificationReport check_ramified_relations(i64 p, cplx rho, int max_index) {
    Stopwatch sw;
    SatakeTriple t = SatakeTriple::ramified_steinberg(p, rho);
    std::vector<VerificationReport> parts;
    std::ostringstream in;
    in << "p=" << p << " rho=" << rho.imag() << "i";
    const double pd = static_cast<double>(p);
    for (int j = 0; j <= max_index; ++j) {
        cplx apj = schur_coefficient(t, j, 0);
        for (int i = 0; i <= max_index; ++i) {
            cplx lhs = schur_coefficient(t, j, i);
            cplx rhs = apj * schur_coefficient(t, 0, i);
            parts.push_back(make_report("hecke-relations", "", "", lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs))));
        }
        parts.push_back(make_report("hecke-relations", "", "", std::abs(apj), std::pow(pd, -0.5 * j), 1e-12));
        // A(p^j, 1) is exactly the j-th power of A(p, 1)
        parts.push_back(make_report("hecke-relations", "", "", apj, std::pow(schur_coefficient(t, 1, 0), j),
                                    1e-12));
    }
    auto r = combine_reports("hecke-relations", "ramified local data: A(p^j,p^i) = A(p^j,1) A(1,p^i)",
                             in.str(), parts);
    r.ms = sw.ms();
    return r;
}

cplx ramified_lemma_gap(i64 p, cplx rho, int j) {
    SatakeTriple t = SatakeTriple::ramified_steinberg(p, rho);
    return schur_coefficient(t, j, 0) - cpow_real(static_cast<double>(p), static_cast<double>(j) * (-0.5 - t.rho));
}

cplx sixone_identity_residual(i64 p, cplx rho, int sign) {
    SatakeTriple t = SatakeTriple::ramified_steinberg(p, rho);
    // A(p^k, p^l) = schur_coefficient(t, k, l)
    cplx lhs = schur_coefficient(t, 1, 1) * schur_coefficient(t, 0, 2);
    cplx rhs = schur_coefficient(t, 1, 3) +
               (schur_coefficient(t, 0, 2) + static_cast<double>(sign) * std::conj(schur_coefficient(t, 2, 0))) /
                   static_cast<double>(p);
    return lhs - rhs;
}

VerificationReport check_usehecke_chain(i64 p, cplx rho, const CoefficientSource& base, int i, int j,
                                        i64 b, i64 c) {
    Stopwatch sw;
    if (b % p == 0) throw InvalidArgument("p must not divide b");
    if (c % (p * p) == 0) throw InvalidArgument("p^2 must not divide c");
    CoefficientSource src = base;
    src.set(SatakeTriple::ramified_steinberg(p, rho));
    const i64 ti = ipow(2, i), tj = ipow(2, j);
    cplx lhs = src(ti * p * b * b, tj * p * c * c);
    cplx rhs = src(ti * b * b, tj * c * c) * src(p, p);
    if (c % p == 0) rhs -= src(ti * b * b, tj * (c / p) * (c / p)) * src(p * p, p);
    std::ostringstream in;
    in << "p=" << p << " rho=" << rho.imag() << "i i=" << i << " j=" << j << " b=" << b << " c=" << c;
    auto chain = make_report("hecke-relations", "", in.str(), lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
    cplx gap = sixone_identity_residual(p, rho, -1);
    auto local = make_report("hecke-relations", "", in.str(), gap, 0.0, 1e-12);
    auto r = combine_reports("hecke-relations", "Hecke chain at a ramified prime and A(p,p)A(1,p^2) identity",
                             in.str(), {chain, local});
    r.ms = sw.ms();
    return r;
}

}  // namespace kforge
