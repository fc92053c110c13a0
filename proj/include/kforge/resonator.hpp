#pragma once

#include <vector>

#include "kforge/hecke.hpp"
#include "kforge/report.hpp"

namespace kforge {

// Index pairs (first, second) of the coefficients A(first, second) produced by
// expanding prod_j A(m_j^2, 1) prod_j A(1, n_j^2) with the multiplication
// rule, one entry per admissible divisor tuple (repeats kept).
std::vector<std::pair<i64, i64>> resonator_terms(const std::vector<i64>& ms, const std::vector<i64>& ns);

// nested sum against the direct product; k = |m-list|, at most 4 entries per
// list, entries odd, at most 30 and supported on unramified primes of src
VerificationReport resonator_expand(int k, const std::vector<i64>& ms, const std::vector<i64>& ns,
                                    const CoefficientSource& src);

// c_0 .. c_{r_max} of the local factor at p of the Dirichlet series built from
// two k-fold expansions, by enumeration of all divisor tuples of total weight r
std::vector<i64> dseries_euler_coefficients(int k, i64 p, int r_max);

}  // namespace kforge
