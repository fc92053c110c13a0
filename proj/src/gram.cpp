#include "kforge/gram.hpp"

#include <cmath>
#include <sstream>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

cplx p_minus_s(i64 p, cplx s) { return std::exp(-s * std::log(static_cast<double>(p))); }

std::array<cplx, 3> params(const SatakeTriple& t) { return {t.alpha, t.beta, t.gamma}; }

// A(p^i, p^j) with zero for negative exponents
cplx A(const SatakeTriple& t, int i, int j) {
    if (i < 0 || j < 0) return 0.0;
    return schur_coefficient(t, i, j);
}

std::string describe(const SatakeTriple& t, cplx s) {
    std::ostringstream in;
    in << "p=" << t.p << " alpha=" << t.alpha << " beta=" << t.beta << " gamma=" << t.gamma << " s=" << s;
    return in.str();
}

}  // namespace

cplx oldform_coefficient(int j, const CoefficientSource& src, i64 p, i64 m, i64 n) {
    if (m < 1 || n < 1) throw InvalidArgument("oldform coefficients need positive indices");
    if (src.has(p) && src.at(p).ramified()) throw InvalidArgument("source must be unramified at p");
    const double sp = std::sqrt(static_cast<double>(p));
    switch (j) {
        case 0:
            return src(m, n);
        case 1: {
            cplx v = 0.0;
            if (m % p == 0) v += src(m / p, p * n);
            if (n % p == 0) v += src(m, n / p);
            return sp * v;
        }
        case 2:
            return m % p == 0 ? static_cast<double>(p) * src(m / p, n) : cplx(0.0);
        default:
            throw InvalidArgument("oldform index must be 0, 1 or 2");
    }
}

GramMatrix3 gram_matrix(i64 p, cplx A1p, cplx Ap1, double norm2) {
    if (std::abs(A1p) > 3.0 || std::abs(Ap1) > 3.0) throw InvalidArgument("|A(1,p)|, |A(p,1)| must be <= 3");
    if (!(norm2 > 0.0)) throw InvalidArgument("norm must be positive");
    const double pd = static_cast<double>(p);
    const double den = pd * pd * pd - 1.0;
    const double a = (std::pow(pd, 2.5) - std::sqrt(pd)) / den;
    const double b = (pd * pd - pd) / den;
    GramMatrix3 g;
    g.norm2 = norm2;
    g.G << 1.0, a * A1p, b * Ap1,
           a * Ap1, 1.0 + b * std::norm(A1p), a * A1p,
           b * A1p, a * Ap1, 1.0;
    g.G *= norm2;
    return g;
}

double OrthoConstants::max_abs() const {
    return std::max({std::abs(c10), std::abs(c11), std::abs(c20), std::abs(c21), std::abs(c22)});
}

OrthoConstants gram_schmidt(const GramMatrix3& G) {
    const Eigen::Matrix3cd Gn = G.G / G.norm2;
    if ((Gn - Gn.adjoint()).norm() > 1e-10) throw NotPositiveDefinite("Gram matrix is not Hermitian");
    Eigen::LLT<Eigen::Matrix3cd> llt(Gn);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Cholesky factorization failed");
    const Eigen::Matrix3cd R = llt.matrixL();
    for (int i = 0; i < 3; ++i)
        if (!(R(i, i).real() > 1e-12)) throw NotPositiveDefinite("Gram matrix is singular");
    const Eigen::Matrix3cd L = R.triangularView<Eigen::Lower>().solve(Eigen::Matrix3cd::Identity());
    OrthoConstants c;
    c.c10 = L(1, 0);
    c.c11 = L(1, 1) - 1.0;
    c.c20 = L(2, 0);
    c.c21 = L(2, 1);
    c.c22 = L(2, 2) - 1.0;
    c.T = L / std::sqrt(G.norm2);
    return c;
}

cplx rankin_local_product(const SatakeTriple& t, cplx s) {
    const cplx X = p_minus_s(t.p, s);
    cplx v = 1.0;
    for (cplx a : params(t))
        for (cplx b : params(t)) v /= 1.0 - a * std::conj(b) * X;
    return v;
}

VerificationReport check_rankin_local(const SatakeTriple& t, cplx s, int J) {
    Stopwatch sw;
    if (s.real() < 0.7) throw InvalidArgument("Re s must be >= 0.7");
    const cplx X = p_minus_s(t.p, s);
    cplx sum = 0.0;
    for (int i = 0; i <= J; ++i)
        for (int j = 0; j <= J; ++j) sum += std::norm(A(t, i, j)) * std::pow(X, 2 * i + j);
    auto r = make_report("gram", "Rankin-Selberg local factor as a Schur double sum", describe(t, s),
                         sum / (1.0 - X * X * X), rankin_local_product(t, s), 1e-7);
    r.ms = sw.ms();
    return r;
}

VerificationReport check_shift_identity(const SatakeTriple& t, cplx s, int J) {
    Stopwatch sw;
    if (s.real() < 0.7) throw InvalidArgument("Re s must be >= 0.7");
    const cplx X = p_minus_s(t.p, s);
    cplx sum = 0.0;
    for (int i = 0; i <= J; ++i)
        for (int j = 0; j <= J; ++j)
            sum += A(t, i, j) * (std::conj(A(t, i - 1, j + 1)) + std::conj(A(t, i, j - 1))) * std::pow(X, 2 * i + j);
    const cplx rhs = (X - X * X * X) * A(t, 0, 1) * rankin_local_product(t, s);
    auto r = make_report("gram", "shifted Rankin-Selberg sum against A(1,p) times the local factor", describe(t, s),
                         sum, rhs, 1e-7);
    r.ms = sw.ms();
    return r;
}

VerificationReport check_curlyL_identity(const SatakeTriple& t, cplx s, int J) {
    Stopwatch sw;
    if (s.real() < 0.7) throw InvalidArgument("Re s must be >= 0.7");
    const cplx X = p_minus_s(t.p, s);
    cplx L = 0.0;
    for (int j = 0; j <= 3 * J; ++j) L += std::norm(A(t, 0, j)) * std::pow(X, j);
    const cplx lhs = L / rankin_local_product(t, s);
    const cplx one_X3 = 1.0 - X * X * X, one_X = 1.0 - X;
    const cplx rhs = one_X3 * one_X3 - std::norm(A(t, 0, 1)) * X * X * one_X * one_X;
    auto r = make_report("gram", "ratio of the A(1,p^j) series to the Rankin-Selberg factor", describe(t, s), lhs,
                         rhs, 1e-7);
    r.ms = sw.ms();
    return r;
}

EisensteinOrtho eisenstein_ortho(const SatakeTriple& t) {
    EisensteinOrtho e{};
    if (t.kind == SatakeKind::EisensteinMin)
        e.exponent = -0.5;
    else if (t.kind == SatakeKind::EisensteinMax)
        e.exponent = kTheta2 - 0.5;
    else
        throw InvalidArgument("eisenstein_ortho needs Eisenstein Satake data");
    const cplx A1p = schur_coefficient(t, 0, 1), Ap1 = schur_coefficient(t, 1, 0);
    e.c = gram_schmidt(gram_matrix(t.p, A1p, Ap1));
    e.K = e.c.max_abs() / std::pow(static_cast<double>(t.p), e.exponent);
    return e;
}

}  // namespace kforge
