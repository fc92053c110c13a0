#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace kforge {

using i64 = std::int64_t;
using i128 = __int128;
using cplx = std::complex<double>;

// a residue class value in [0, q)
struct Residue {
    i64 value = 0;
    i64 modulus = 1;

    Residue() = default;
    Residue(i64 a, i64 q);
};

// reduce a into [0, q) for q >= 1
inline i64 mod_floor(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}

inline i64 mod_floor(i128 a, i64 q) {
    i128 r = a % q;
    return static_cast<i64>(r < 0 ? r + q : r);
}

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

// returns g = gcd(a,b) >= 0 together with x,y such that a x + b y = g
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

i64 mod_inverse(i64 a, i64 q);

cplx additive_char(i64 a, i64 q);

// e(k/q) for k = 0..q-1; exact at quarter points
std::vector<cplx> unit_roots(i64 q);

i64 ramanujan_sum(i64 q, i64 n);
i64 ramanujan_sum_divisor(i64 q, i64 n);

int mobius(i64 n);
i64 euler_phi(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_prime(i64 n);
bool is_squarefree(i64 n);
int valuation(i64 n, i64 p);
i64 ipow(i64 b, int e);
std::vector<i64> primes_upto(i64 n);

// largest divisor of d supported on the primes dividing m
i64 gcd_infinity(i64 d, i64 m);

// Round an accumulated exponential sum to the nearest integer.  `terms` is
// the number of summands; the residual must stay below 1e-6 * terms.
i64 round_to_integer(cplx v, i64 terms);

}  // namespace kforge
