#pragma once

#include <array>
#include <memory>
#include <vector>

#include "kforge/arith.hpp"
#include "kforge/report.hpp"

namespace kforge {

struct KloostermanQuery {
    i64 n1 = 0, n2 = 0, m1 = 0, m2 = 0;
    i64 D1 = 1, D2 = 1;
    i64 N = 1;
};

// Real-valued; the imaginary residual is checked against 1e-6 per term.
double kloosterman_classical(i64 m, i64 n, i64 c);

// S~(n1, n2, m1; D1, D2); m2 and N are ignored.
cplx gl3_tilde_sum(const KloostermanQuery& q);

// S^(N)(n1, n2, m1, m2; D1, D2)
cplx gl3_twisted_sum(const KloostermanQuery& q);

// One admissible (B, C, Y, Z) configuration of the twisted sum.
struct TwistedTuple {
    i64 B1, C1, Y1, Z1;
    i64 B2, C2, Y2, Z2;
};

// All admissible tuples with representatives B_j, C_j in [0, D_j) and the
// canonical extended-gcd choice of (Y_j, Z_j).
std::vector<TwistedTuple> twisted_tuples(i64 D1, i64 D2, i64 N);

// Numerator of the phase of one summand over the common modulus D1*D2.
i64 twisted_phase(const TwistedTuple& t, i64 n1, i64 n2, i64 m1, i64 m2, i64 D1, i64 D2);

// For a fixed (D1, D2, N) the phase is n1*a + n2*b + m1*c + m2*d mod D1*D2.
// The coefficient list is cached so sweeps over the arguments stay cheap.
struct TwistedCoefficients {
    i64 D1, D2, N;
    std::vector<std::array<i64, 4>> abcd;
};
std::shared_ptr<const TwistedCoefficients> twisted_coefficients(i64 D1, i64 D2, i64 N);

VerificationReport check_factorization(const KloostermanQuery& q, i64 t1, i64 u1, i64 t2, i64 u2);
VerificationReport check_p_p2_evaluation(i64 p, i64 n1, i64 n2, i64 m1, i64 m2);
cplx decomposition_rhs(const KloostermanQuery& q);
VerificationReport check_decomposition(const KloostermanQuery& q);
VerificationReport check_tilde_bound(const KloostermanQuery& q);

// Lemma-type closed form p - 1 + r_p(m1) r_p(n2) for the (p, p) twisted sum.
VerificationReport check_pp_closed_form(i64 p, i64 n1, i64 n2, i64 m1, i64 m2);

// character sum over C1 mod 2^i b^2 delta, C2 mod delta, gamma mod delta
struct CharacterSumQuery {
    i64 delta = 1, b = 1, c = 1;
    i64 m1 = 1, m2 = 1;
    int i = 0, j = 0;
    i64 p = 3;
    int sign = 1;  // +1 picks the upper sign of the -/+ m1 m2 C1 pbar term
};

void validate(const CharacterSumQuery& q);
cplx character_sum_C(const CharacterSumQuery& q);
cplx character_sum_C_reduced(const CharacterSumQuery& q);

// |C(delta)| divided by (b delta)^0.1 delta^1.5 (gcd factors)^0.5
double character_sum_bound_ratio(const CharacterSumQuery& q, cplx value);
VerificationReport check_C_bound(const CharacterSumQuery& q, double K = 4.0);

}  // namespace kforge
