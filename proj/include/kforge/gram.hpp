#pragma once

#include <Eigen/Dense>

#include "kforge/hecke.hpp"
#include "kforge/report.hpp"

namespace kforge {

// A^{(j)}(m, n) for the three oldform translates (j = 0, 1, 2); A(x, y) = 0
// when x or y is not integral
cplx oldform_coefficient(int j, const CoefficientSource& src, i64 p, i64 m, i64 n);

struct GramMatrix3 {
    Eigen::Matrix3cd G;  // includes the factor ||f||^2
    double norm2 = 1.0;
};

GramMatrix3 gram_matrix(i64 p, cplx A1p, cplx Ap1, double norm2 = 1.0);

struct OrthoConstants {
    cplx c10, c11, c20, c21, c22;
    Eigen::Matrix3cd T;  // lower triangular, S_i = sum_j T_ij T_j f, orthonormal
    double max_abs() const;
};

// Cholesky of the normalised Gram matrix without pivoting, in the order
// (T0, T1, T2); throws NotPositiveDefinite
OrthoConstants gram_schmidt(const GramMatrix3& G);

// sum |A(p^i,p^j)|^2 X^{2i+j} / (1 - X^3) against prod_{i,j} (1 - x_i conj x_j X)^{-1}
VerificationReport check_rankin_local(const SatakeTriple& t, cplx s, int J = 30);
VerificationReport check_shift_identity(const SatakeTriple& t, cplx s, int J = 30);
VerificationReport check_curlyL_identity(const SatakeTriple& t, cplx s, int J = 30);

// closed Rankin-Selberg product at p
cplx rankin_local_product(const SatakeTriple& t, cplx s);

struct EisensteinOrtho {
    OrthoConstants c;
    double exponent;  // -1/2 (minimal) or theta_2 - 1/2 (maximal)
    double K;         // max |c_ij| / p^exponent
};

// runs the Gram pipeline on Eisenstein Satake data (eisenstein_min / eisenstein_max)
EisensteinOrtho eisenstein_ortho(const SatakeTriple& t);

}  // namespace kforge
