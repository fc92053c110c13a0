#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kforge/archimedean.hpp"
#include "kforge/arith.hpp"

namespace kforge {

class SumCache;

struct GeometricTermSpec {
    i64 p = 3;
    i64 m1 = 1, m2 = 1, n1 = 1, n2 = 1;
    i64 cutoff = 1000;  // D1 D2 <= cutoff
    double afe_alpha = 0.04;

    // odd prime p, positive arguments, gcd(m1 m2, 2p) = 1, 0 < afe_alpha < 1/2
    void validate() const;
    // index of the Hecke congruence subgroup, p^2 + p + 1
    i64 P() const { return p * p + p + 1; }
};

enum class WeylCell { W4, W5, W6 };

// One summand of S4, S5 or S6 for a fixed choice of signs.  `value` is the
// Kloosterman sum divided by D1 D2; it is left empty when values were not requested.
struct GeometricTerm {
    WeylCell cell = WeylCell::W4;
    i64 D1 = 1, D2 = 1;
    int eps1 = 1, eps2 = 1;  // eps2 only matters for S6
    std::optional<cplx> value;
    double arg1 = 0.0, arg2 = 0.0;  // arg2 only for S6
};

std::vector<GeometricTerm> enumerate_S4_terms(const GeometricTermSpec& spec, bool with_values = true,
                                              SumCache* cache = nullptr);
std::vector<GeometricTerm> enumerate_S5_terms(const GeometricTermSpec& spec, bool with_values = true,
                                              SumCache* cache = nullptr);
std::vector<GeometricTerm> enumerate_S6_terms(const GeometricTermSpec& spec, bool with_values = true,
                                              SumCache* cache = nullptr);

// every (D1, D2) with D1 D2 <= cutoff tested against the summation
// conditions directly; sorted, without signs
std::vector<std::pair<i64, i64>> brute_force_pairs(const GeometricTermSpec& spec, WeylCell cell);
// the distinct (D1, D2) of an enumeration, sorted
std::vector<std::pair<i64, i64>> term_pairs(const std::vector<GeometricTerm>& terms);

// P sum value * Phi(arg1, arg2) over the listed terms
cplx assemble_terms(const GeometricTermSpec& spec, const std::vector<GeometricTerm>& terms,
                    const std::function<cplx(double, double)>& phi);

// P delta_{m1 = n1, m2 = n2} times the integral of h spec
cplx delta_term(const GeometricTermSpec& spec, const TestFunctionSpec& h, const QuadratureSpec& quad = {});

}  // namespace kforge
