#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "kforge/arith.hpp"
#include "kforge/report.hpp"

namespace kforge {

inline constexpr double kTheta2 = 7.0 / 64.0;
inline constexpr double kTheta3 = 5.0 / 14.0;
inline constexpr int kSchurMaxIndex = 200;

enum class SatakeKind { Unramified, RamifiedSteinberg, EisensteinMin, EisensteinMax };

struct SatakeTriple {
    i64 p = 2;
    cplx alpha{1.0, 0.0}, beta{1.0, 0.0}, gamma{1.0, 0.0};
    SatakeKind kind = SatakeKind::Unramified;
    cplx rho{0.0, 0.0};           // RamifiedSteinberg
    cplx s1{0.0, 0.0}, s2{0.0, 0.0};  // EisensteinMin
    cplx a_p{0.0, 0.0}, b_p{0.0, 0.0}, s{0.0, 0.0};  // EisensteinMax

    static SatakeTriple unramified(i64 p, cplx a, cplx b, cplx g);
    static SatakeTriple tempered(i64 p, double theta1, double theta2);
    static SatakeTriple ramified_steinberg(i64 p, cplx rho);
    static SatakeTriple eisenstein_min(i64 p, cplx s1, cplx s2);
    static SatakeTriple eisenstein_max(i64 p, cplx a_p, cplx b_p, cplx s);

    bool ramified() const;
};

// s_{(k+l, k, 0)}(alpha, beta, gamma) by the branching rule; exact for
// repeated and zero parameters.
cplx schur_coefficient(const SatakeTriple& t, int k, int l);
cplx schur_polynomial(cplx x1, cplx x2, cplx x3, int k, int l);

// Determinant ratio; throws DegenerateParameters near coinciding parameters.
cplx schur_bialternant(cplx x1, cplx x2, cplx x3, int k, int l);

class CoefficientSource {
public:
    CoefficientSource() = default;
    explicit CoefficientSource(std::map<i64, SatakeTriple> local);
    CoefficientSource(const CoefficientSource& other);
    CoefficientSource& operator=(const CoefficientSource& other);

    void set(const SatakeTriple& t);
    bool has(i64 p) const { return local_.count(p) != 0; }
    const SatakeTriple& at(i64 p) const;
    const std::map<i64, SatakeTriple>& local() const { return local_; }

    // A(m, n), memoized
    cplx operator()(i64 m, i64 n) const;
    cplx direct(i64 m, i64 n) const;

    // A(p^k, p^l) at a single prime
    cplx local_coefficient(i64 p, int k, int l) const;

private:
    std::map<i64, SatakeTriple> local_;
    mutable std::shared_mutex mu_;
    struct KeyHash {
        std::size_t operator()(const std::pair<i64, i64>& k) const {
            return std::hash<i64>()(k.first * 1000003 ^ k.second);
        }
    };
    mutable std::unordered_map<std::pair<i64, i64>, cplx, KeyHash> memo_;
};

cplx coefficient(const CoefficientSource& src, i64 m, i64 n);

// Random tempered source at the given primes, seeded.
CoefficientSource random_tempered_source(const std::vector<i64>& primes, std::uint64_t seed);

// deterministic U[0,1) from a 64-bit generator state
double uniform01(std::uint64_t bits);

VerificationReport check_hecke_mn(const CoefficientSource& src, i64 m, i64 n1, i64 n2);
VerificationReport check_hecke_n1(const CoefficientSource& src, i64 n, i64 m1, i64 m2);
VerificationReport check_hecke_1n(const CoefficientSource& src, i64 n, i64 m1, i64 m2);
VerificationReport check_ramified_relations(i64 p, cplx rho, int max_index = 6);

// A(p^j, 1) from the Schur evaluation minus the lemma's p^{j(-1/2-rho)}.
cplx ramified_lemma_gap(i64 p, cplx rho, int j);

// sign = -1 is the form that follows from the Schur evaluation; +1 is the
// form printed next to the Hecke chain (see README).
cplx sixone_identity_residual(i64 p, cplx rho, int sign);

VerificationReport check_usehecke_chain(i64 p, cplx rho, const CoefficientSource& src, int i, int j,
                                        i64 b, i64 c);

}  // namespace kforge
