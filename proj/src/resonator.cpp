#include "kforge/resonator.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

using State = std::pair<i64, i64>;

// A(n, 1) A(M1, M2) = sum over d0 d1 d2 = n, d1 | M1, d2 | M2 of A(M1 d0 / d1, M2 d1 / d2)
void left_step(const State& s, i64 n, std::vector<State>& out) {
    for (i64 d1 : divisors(n)) {
        if (s.first % d1 != 0) continue;
        for (i64 d2 : divisors(n / d1)) {
            if (s.second % d2 != 0) continue;
            const i64 d0 = n / (d1 * d2);
            out.push_back({s.first / d1 * d0, s.second / d2 * d1});
        }
    }
}

// A(1, n) A(M1, M2) = sum over b0 b1 b2 = n, b1 | M1, b2 | M2 of A(M1 b2 / b1, M2 b0 / b2)
void right_step(const State& s, i64 n, std::vector<State>& out) {
    for (i64 b1 : divisors(n)) {
        if (s.first % b1 != 0) continue;
        for (i64 b2 : divisors(n / b1)) {
            if (s.second % b2 != 0) continue;
            const i64 b0 = n / (b1 * b2);
            out.push_back({s.first / b1 * b2, s.second / b2 * b0});
        }
    }
}

std::vector<State> expand(const std::vector<i64>& ms, const std::vector<i64>& ns) {
    std::vector<State> cur{{1, 1}};
    if (!ms.empty()) cur = {{ms[0] * ms[0], 1}};
    for (std::size_t j = 1; j < ms.size(); ++j) {
        std::vector<State> next;
        for (const State& s : cur) left_step(s, ms[j] * ms[j], next);
        cur.swap(next);
    }
    for (i64 n : ns) {
        std::vector<State> next;
        for (const State& s : cur) right_step(s, n * n, next);
        cur.swap(next);
    }
    return cur;
}

std::string list_str(const std::vector<i64>& v) {
    std::ostringstream o;
    o << "(";
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << ")";
    return o.str();
}

}  // namespace

std::vector<std::pair<i64, i64>> resonator_terms(const std::vector<i64>& ms, const std::vector<i64>& ns) {
    return expand(ms, ns);
}

VerificationReport resonator_expand(int k, const std::vector<i64>& ms, const std::vector<i64>& ns,
                                    const CoefficientSource& src) {
    Stopwatch sw;
    if (k < 1 || k > 4) throw InvalidArgument("k must lie in 1..4");
    if (static_cast<int>(ms.size()) != k) throw InvalidArgument("the m-list must have k entries");
    if (ns.size() > 4) throw InvalidArgument("the n-list has at most 4 entries");
    for (const auto* list : {&ms, &ns})
        for (i64 m : *list) {
            if (m < 1 || m > 30 || m % 2 == 0) throw InvalidArgument("list entries must be odd and in 1..30");
            for (auto [q, e] : factorize(m)) {
                (void)e;
                if (!src.has(q)) throw MissingPrime("no Satake data at " + std::to_string(q));
                if (src.at(q).ramified()) throw InvalidArgument("list entries must avoid ramified primes");
            }
        }
    cplx lhs = 0.0;
    double mag = 0.0;
    for (const State& s : expand(ms, ns)) {
        const cplx a = src(s.first, s.second);
        lhs += a;
        mag += std::abs(a);
    }
    cplx rhs = 1.0;
    for (i64 m : ms) rhs *= src(m * m, 1);
    for (i64 n : ns) rhs *= src(1, n * n);
    std::ostringstream in;
    in << "k=" << k << " m=" << list_str(ms) << " n=" << list_str(ns);
    auto r = make_report("resonator", "iterated multiplication rule for products of A(m^2,1) and A(1,n^2)",
                         in.str(), lhs, rhs, 1e-9 * std::max(1.0, mag));
    r.ms = sw.ms();
    return r;
}

std::vector<i64> dseries_euler_coefficients(int k, i64 p, int r_max) {
    if (k < 1 || k > 3) throw InvalidArgument("k must lie in 1..3");
    if (p < 2 || !is_prime(p)) throw InvalidArgument("p must be prime");
    if (r_max < 0 || r_max > 6) throw InvalidArgument("r_max must lie in 0..6");
    // per weight w: how often each final index pair occurs among all
    // exponent vectors (e_1..e_k) with sum w and all divisor tuples
    std::vector<std::map<State, i64>> count(static_cast<std::size_t>(r_max + 1));
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    auto visit = [&](auto&& self, int j, int left) -> void {
        if (j == k) {
            std::vector<i64> ms;
            for (int x : e) ms.push_back(ipow(p, x));
            const int w = r_max - left;
            for (const State& s : expand(ms, {})) ++count[static_cast<std::size_t>(w)][s];
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[static_cast<std::size_t>(j)] = x;
            self(self, j + 1, left - x);
        }
    };
    visit(visit, 0, r_max);
    // the a-side and b-side expansions must end at the same index pair
    std::vector<i64> c(static_cast<std::size_t>(r_max + 1), 0);
    for (int r = 0; r <= r_max; ++r)
        for (int w = 0; w <= r; ++w)
            for (const auto& [s, na] : count[static_cast<std::size_t>(w)]) {
                auto it = count[static_cast<std::size_t>(r - w)].find(s);
                if (it != count[static_cast<std::size_t>(r - w)].end()) c[static_cast<std::size_t>(r)] += na * it->second;
            }
    if (c[0] != 1) throw ExpressionMismatch("constant coefficient differs from 1");
    return c;
}

}  // namespace kforge
