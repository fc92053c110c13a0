#include "kforge/geometric.hpp"

#include <algorithm>
#include <set>

#include "kforge/cache.hpp"
#include "kforge/errors.hpp"

namespace kforge {

void GeometricTermSpec::validate() const {
    if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime");
    if (m1 < 1 || m2 < 1 || n1 < 1 || n2 < 1) throw InvalidArgument("m1, m2, n1, n2 must be positive");
    if (gcd(m1 * m2, 2 * p) != 1) throw InvalidArgument("gcd(m1 m2, 2p) must be 1");
    if (!(afe_alpha > 0.0 && afe_alpha < 0.5)) throw InvalidArgument("afe_alpha must lie in (0, 1/2)");
    if (cutoff < 1 || cutoff > 100000) throw InvalidArgument("cutoff must lie in [1, 1e5]");
}

namespace {

double ratio(i64 num, i64 den) { return static_cast<double>(num) / static_cast<double>(den); }

bool s4_condition(const GeometricTermSpec& s, i64 D1, i64 D2) {
    return D1 % (s.p * D2) == 0 && static_cast<i128>(s.m2) * D1 == static_cast<i128>(s.n1) * D2 * D2;
}

bool s5_condition(const GeometricTermSpec& s, i64 D1, i64 D2) {
    return D1 % s.p == 0 && D2 % D1 == 0 && static_cast<i128>(s.m1) * D2 == static_cast<i128>(s.n2) * D1 * D1;
}

bool s6_condition(const GeometricTermSpec& s, i64 D1, i64 D2) { return D1 % s.p == 0 && D2 % s.p == 0; }

}  // namespace

std::vector<GeometricTerm> enumerate_S4_terms(const GeometricTermSpec& spec, bool with_values, SumCache* cache) {
    spec.validate();
    std::vector<GeometricTerm> out;
    // D1 = n1 D2^2 / m2 is forced; D1 D2 <= cutoff bounds D2^3
    for (i64 D2 = 1; D2 * D2 * D2 <= spec.cutoff * spec.m2; ++D2) {
        const i128 num = static_cast<i128>(spec.n1) * D2 * D2;
        if (num % spec.m2 != 0) continue;
        const i64 D1 = static_cast<i64>(num / spec.m2);
        if (static_cast<i128>(D1) * D2 > spec.cutoff || D1 % (spec.p * D2) != 0) continue;
        for (int eps : {1, -1}) {
            GeometricTerm t{WeylCell::W4, D1, D2, eps, 1, std::nullopt,
                            eps * ratio(spec.m1 * spec.m2 * spec.n2, D1 * D2), 0.0};
            if (with_values) {
                KloostermanQuery q{-eps * spec.n2, spec.m2, spec.m1, 0, D2, D1, 1};
                t.value = cached_sum(cache, q, SumKind::Tilde) / static_cast<double>(D1 * D2);
            }
            out.push_back(t);
        }
    }
    return out;
}

std::vector<GeometricTerm> enumerate_S5_terms(const GeometricTermSpec& spec, bool with_values, SumCache* cache) {
    spec.validate();
    std::vector<GeometricTerm> out;
    for (i64 D1 = spec.p; D1 * D1 * D1 <= spec.cutoff * spec.m1; D1 += spec.p) {
        const i128 num = static_cast<i128>(spec.n2) * D1 * D1;
        if (num % spec.m1 != 0) continue;
        const i64 D2 = static_cast<i64>(num / spec.m1);
        if (static_cast<i128>(D1) * D2 > spec.cutoff || D2 % D1 != 0) continue;
        for (int eps : {1, -1}) {
            GeometricTerm t{WeylCell::W5, D1, D2, eps, 1, std::nullopt,
                            eps * ratio(spec.n1 * spec.m1 * spec.m2, D1 * D2), 0.0};
            if (with_values) {
                KloostermanQuery q{eps * spec.n1, spec.m1, spec.m2, 0, D1, D2, 1};
                t.value = cached_sum(cache, q, SumKind::Tilde) / static_cast<double>(D1 * D2);
            }
            out.push_back(t);
        }
    }
    return out;
}

std::vector<GeometricTerm> enumerate_S6_terms(const GeometricTermSpec& spec, bool with_values, SumCache* cache) {
    spec.validate();
    std::vector<GeometricTerm> out;
    for (i64 D1 = spec.p; D1 * spec.p <= spec.cutoff; D1 += spec.p)
        for (i64 D2 = spec.p; D1 * D2 <= spec.cutoff; D2 += spec.p)
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    GeometricTerm t{WeylCell::W6, D1, D2, e1, e2, std::nullopt,
                                    -e2 * ratio(spec.m1 * spec.n2 * D2, D1 * D1),
                                    -e1 * ratio(spec.m2 * spec.n1 * D1, D2 * D2)};
                    if (with_values) {
                        KloostermanQuery q{e2 * spec.n2, e1 * spec.n1, spec.m1, spec.m2, D1, D2, spec.p};
                        t.value = cached_sum(cache, q, SumKind::Twisted) / static_cast<double>(D1 * D2);
                    }
                    out.push_back(t);
                }
    return out;
}

std::vector<std::pair<i64, i64>> brute_force_pairs(const GeometricTermSpec& spec, WeylCell cell) {
    spec.validate();
    std::vector<std::pair<i64, i64>> out;
    for (i64 D1 = 1; D1 <= spec.cutoff; ++D1)
        for (i64 D2 = 1; D1 * D2 <= spec.cutoff; ++D2) {
            bool ok = cell == WeylCell::W4   ? s4_condition(spec, D1, D2)
                      : cell == WeylCell::W5 ? s5_condition(spec, D1, D2)
                                             : s6_condition(spec, D1, D2);
            if (ok) out.emplace_back(D1, D2);
        }
    return out;
}

std::vector<std::pair<i64, i64>> term_pairs(const std::vector<GeometricTerm>& terms) {
    std::set<std::pair<i64, i64>> s;
    for (const auto& t : terms) s.emplace(t.D1, t.D2);
    return {s.begin(), s.end()};
}

cplx assemble_terms(const GeometricTermSpec& spec, const std::vector<GeometricTerm>& terms,
                    const std::function<cplx(double, double)>& phi) {
    cplx acc = 0.0;
    for (const auto& t : terms) {
        if (!t.value) throw InvalidArgument("terms were enumerated without Kloosterman values");
        acc += *t.value * phi(t.arg1, t.arg2);
    }
    return static_cast<double>(spec.P()) * acc;
}

cplx delta_term(const GeometricTermSpec& spec, const TestFunctionSpec& h, const QuadratureSpec& quad) {
    spec.validate();
    if (spec.m1 != spec.n1 || spec.m2 != spec.n2) return 0.0;
    return static_cast<double>(spec.P()) * integrate_h_spec(h, quad).value;
}

}  // namespace kforge
