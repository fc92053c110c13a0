#pragma once

#include <array>
#include <vector>

#include "kforge/hecke.hpp"
#include "kforge/report.hpp"

namespace kforge {

struct SpectralParameter;

// coefficient of k^{-s}, k = 0..X (index 0 unused)
std::vector<cplx> symsq_coefficients(const CoefficientSource& src, i64 N, i64 X);

// closed local factor: degree 6 (unramified) or 3 (ramified) in p^{-s}
cplx symsq_local_factor(const SatakeTriple& t, cplx s);

// truncated Schur series for the same factor; the (1 - p^{-3s})^{-1} k-sum is
// only present in the unramified case
cplx symsq_local_series(const SatakeTriple& t, cplx s, int J);

// the three-factor display written in terms of rho
cplx symsq_ramified_display(i64 p, cplx rho, cplx s);

VerificationReport check_local_factor(const SatakeTriple& t, cplx s, int J = 40);

cplx archimedean_factor(const SpectralParameter& mu, cplx u);

struct Lambda2Table {
    std::array<cplx, 7> lambda{};  // lambda(2^j), j = 0..6
};

Lambda2Table lambda2_table(const SatakeTriple& t2);

// sum_j (-1)^j conj(lambda(2^j)) 2^{-j v}
cplx lambda2_inverse_factor(const Lambda2Table& tab, cplx v);

// prod_{i <= j} (1 - conj(x_i x_j) 2^{-v})
cplx lambda2_product(const SatakeTriple& t2, cplx v);

VerificationReport check_lambda_table(const SatakeTriple& t2, cplx v);

// L^{(2)}(s) / L_2(s, contragredient) from an Euler product over odd primes
// up to `truncation`.  The polynomial factor is evaluated first and a zero
// there short-circuits to exactly 0.
cplx lstar_modification(const CoefficientSource& src, cplx s, i64 truncation);

i64 conductor(i64 N);

struct RootNumber {
    cplx epsilon;      // prod -p^{3/2} conj A(p^3, 1)
    cplx alternative;  // prod (-p^{1/2} conj A(p,p) + p^{-1/2})
};
RootNumber root_number(const std::vector<std::pair<i64, cplx>>& level_primes);

struct PoleScanPoint {
    cplx s;
    cplx value;         // partial Euler product up to P
    cplx value_longer;  // up to 4P
    double growth;      // |value_longer| / |value|
    bool flagged;
};
struct PoleScanReport {
    std::vector<PoleScanPoint> points;
    bool bounded = true;
};

// partial Euler products of L^{(2)} on a grid; growth between P and 4P is
// flagged when it exceeds `threshold`
PoleScanReport pole_scan(const CoefficientSource& src, const std::vector<cplx>& grid, i64 P = 200,
                         double threshold = 1.1);

// the symmetric square lift of random tempered GL(2) data: (a^2, 1, a^{-2})
CoefficientSource sym2_lift_source(const std::vector<i64>& primes, std::uint64_t seed);

}  // namespace kforge
