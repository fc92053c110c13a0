#include "kforge/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kforge/errors.hpp"

namespace kforge {

Residue::Residue(i64 a, i64 q) : value(0), modulus(q) {
    if (q < 1) throw InvalidArgument("residue modulus must be positive");
    value = mod_floor(a, q);
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 mod_inverse(i64 a, i64 q) {
    if (q < 1) throw InvalidArgument("modulus must be positive");
    if (q == 1) return 0;
    ExtGcd e = ext_gcd(mod_floor(a, q), q);
    if (e.g != 1)
        throw NotInvertible(std::to_string(a) + " mod " + std::to_string(q));
    return mod_floor(e.x, q);
}

cplx additive_char(i64 a, i64 q) {
    if (q < 1) throw InvalidArgument("modulus must be positive");
    i64 r = mod_floor(a, q);
    // split the circle into quadrants so that e(j/4) comes out exact
    i64 four_r = 4 * r;
    i64 quadrant = four_r / q;
    i64 rest = four_r - quadrant * q;
    double c = 1.0, s = 0.0;
    if (rest != 0) {
        double theta = 0.5 * std::numbers::pi * static_cast<double>(rest) / static_cast<double>(q);
        c = std::cos(theta);
        s = std::sin(theta);
    }
    switch (quadrant) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

std::vector<cplx> unit_roots(i64 q) {
    std::vector<cplx> out(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k) out[static_cast<std::size_t>(k)] = additive_char(k, q);
    return out;
}

i64 round_to_integer(cplx v, i64 terms) {
    double r = std::nearbyint(v.real());
    double resid = std::abs(v - cplx(r, 0.0));
    if (!(resid < 1e-6 * static_cast<double>(std::max<i64>(terms, 1))))
        throw RoundingOverflow("residual " + std::to_string(resid) + " over " +
                               std::to_string(terms) + " terms");
    return static_cast<i64>(r);
}

i64 ramanujan_sum(i64 q, i64 n) {
    if (q < 1) throw InvalidArgument("ramanujan_sum needs q >= 1");
    cplx acc = 0.0;
    i64 count = 0;
    i64 nr = mod_floor(n, q);
    for (i64 a = 0; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        acc += additive_char(static_cast<i64>(static_cast<i128>(a) * nr % q), q);
        ++count;
    }
    return round_to_integer(acc, count);
}

i64 ramanujan_sum_divisor(i64 q, i64 n) {
    i64 g = gcd(q, n);  // gcd(q, 0) = q
    i64 total = 0;
    for (i64 d : divisors(g)) total += d * mobius(q / d);
    return total;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw InvalidArgument("factorize needs n >= 1");
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

int mobius(i64 n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> d{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = d.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_squarefree(i64 n) {
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

int valuation(i64 n, i64 p) {
    if (n == 0) return 1 << 30;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::vector<i64> primes_upto(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

i64 gcd_infinity(i64 d, i64 m) {
    i64 out = 1;
    if (m == 0) return d;
    for (auto [p, e] : factorize(d))
        if (m % p == 0) out *= ipow(p, e);
    return out;
}

}  // namespace kforge
