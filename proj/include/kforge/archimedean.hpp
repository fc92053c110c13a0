#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "kforge/arith.hpp"

namespace kforge {

struct SpectralParameter {
    cplx mu1{0.0, 0.0}, mu2{0.0, 0.0}, mu3{0.0, 0.0};

    // validates mu1 + mu2 + mu3 = 0; with `automorphic` also |Re mu_j| <= 5/14
    // and the multiset closed under mu -> -conj(mu)
    static SpectralParameter make(cplx a, cplx b, cplx c, bool automorphic = false);
    static SpectralParameter tempered(double t1, double t2);

    std::array<cplx, 3> values() const { return {mu1, mu2, mu3}; }
    SpectralParameter negated() const { return {-mu1, -mu2, -mu3}; }
    double norm() const;
    bool is_automorphic(double tol = 1e-10) const;
};

// (mu1-mu2)(mu2-mu3)(mu3-mu1) tan(pi/2 (mu1-mu2)) tan(pi/2 (mu2-mu3)) tan(pi/2 (mu3-mu1))
cplx spec_measure(const SpectralParameter& mu);

enum class TestFunctionKind { Standard, Custom };

// h(mu) as exp(log_h(mu) - log_scale).  log_scale is a fixed constant so that
// values stay in double range; it never depends on a quadrature grid.
struct TestFunctionSpec {
    int A0 = 41;
    TestFunctionKind kind = TestFunctionKind::Custom;
    double log_scale = 0.0;
    std::function<cplx(const SpectralParameter&)> log_h;

    cplx operator()(const SpectralParameter& mu) const;
    // log h(mu) without the scale; -inf real part at a zero
    cplx log_value(const SpectralParameter& mu) const { return log_h(mu); }
};

// The product test function with odd-difference and even-sum zero sets.
// With A0 = 41 it is positive on tempered parameters; A0 = 40 flips the sign.
TestFunctionSpec standard_test_function(int A0 = 41);

// h(mu) / |h(0)| by plain long double products, for independent checks
cplx standard_test_function_direct(int A0, const SpectralParameter& mu);

cplx kernel_G_tilde(cplx s, const SpectralParameter& mu, int sign);
cplx kernel_G_sym(cplx s1, cplx s2, const SpectralParameter& mu, int eps1, int eps2);

// (1 - 4u^2) prod_{+-} prod_{even n, |n| <= A0} prod_{i <= j} (1/2 - u +- (mu_i + mu_j) + n)
// the value overflows double for A0 of the usual size, hence long double
std::complex<long double> polynomial_G(cplx u, const SpectralParameter& mu, int A0 = 41);
cplx log_polynomial_G(cplx u, const SpectralParameter& mu, int A0 = 41);

enum class ContourRule { Bent, Vertical, Trapezoid };

struct QuadratureSpec {
    // real parts of the s-contours (Phi_w4, Phi_w6) and of the u-line (V, W)
    double sigma_w4 = 0.25;
    double sigma_w6 = 1.0 / 3.0;
    double sigma_weight = 2.0;
    // vertical half-height before the contour bends away from the real axis;
    // for V and W the truncation height of the line
    double height = 20.0;
    double weight_height = 32.0;
    double arm_length = 30.0;
    double arm_angle = 0.75 * 3.141592653589793;
    int nodes_per_unit = 32;
    int nodes_per_unit_w6 = 16;
    int weight_nodes_per_unit = 8;  // trapezoid step for V, W (checked against twice this)
    ContourRule rule = ContourRule::Bent;
    // mu lattice: t-step and dynamic range kept (decades below the peak of |h spec|)
    double lattice_step = 0.1;
    double lattice_step_w6 = 0.125;
    double lattice_decades = 20.0;
    double doubling_tol = 1e-4;

    void validate() const;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;  // node-doubling estimate (max over the refinements)
    cplx alternate{0.0, 0.0};  // the refined value that attains `error`
    double scale = 0.0;  // sum of |terms|, the cancellation reference
    int nodes = 0;
};

// weighted mu-lattice for the integral over Re mu = 0 of h spec dmu
struct MuLattice {
    double step = 0.1;
    std::vector<int> k1, k2;      // orbit representatives (t1 = k1 step, t2 = k2 step)
    std::vector<double> weight;   // multiplicity * h * spec * (-step^2), real
    int kmax = 0;                 // max |k_j| over the kept points, j = 1,2,3
    double tmax() const { return kmax * step; }
};

MuLattice build_mu_lattice(const TestFunctionSpec& h, double step, double decades);

// integral of h spec over Re mu = 0 with its step-halving error estimate
QuadResult integrate_h_spec(const TestFunctionSpec& h, const QuadratureSpec& quad);

// K_{w4}(y; mu) by contour quadrature
cplx kernel_K_w4(double y, const SpectralParameter& mu, const QuadratureSpec& quad = {});
// same kernel by the residue series to the left (small |y| only)
cplx kernel_K_w4_residues(double y, const SpectralParameter& mu, int kmax = 80);

// Each transform is computed three times: as specified, with doubled contour
// nodes, and with the mu-lattice step halved; `error` is the larger change.
QuadResult phi_w4(double y, const TestFunctionSpec& h, const QuadratureSpec& quad = {});
QuadResult phi_w5(double y, const TestFunctionSpec& h, const QuadratureSpec& quad = {});
QuadResult phi_w6(double y1, double y2, const TestFunctionSpec& h, const QuadratureSpec& quad = {});

// batched forms sharing one contour and lattice; they never throw on a failed
// doubling check, the caller inspects `error`
std::vector<QuadResult> phi_w4_many(const std::vector<double>& ys, const TestFunctionSpec& h,
                                    const QuadratureSpec& quad = {}, bool w5 = false);
std::vector<QuadResult> phi_w6_many(const std::vector<std::pair<double, double>>& ys,
                                    const TestFunctionSpec& h, const QuadratureSpec& quad = {});

// true when the doubling estimate is within quad.doubling_tol of the value
// (values below 1e-9 of the cancellation scale count as resolved zeros)
bool converged(const QuadResult& r, const QuadratureSpec& quad);

// Values are reported relative to |G(0, mu)|, which overflows double.
struct WeightResult {
    cplx value{0.0, 0.0};  // V(x) / |G(0, mu)|
    double error = 0.0;    // node-doubling estimate, same units
    cplx alternate{0.0, 0.0};  // value with every second node dropped
    cplx G0_phase{1.0, 0.0};
    double log_abs_G0 = 0.0;
};

// V(x) and W(x), evaluated in multiprecision on Re u = sigma
WeightResult weight_V(double x, const SpectralParameter& mu, const QuadratureSpec& quad = {}, int A0 = 41);
WeightResult weight_W(double x, const SpectralParameter& mu, const QuadratureSpec& quad = {}, int A0 = 41);

// one pass over the u-line shared by all x
std::vector<WeightResult> weight_V_many(const std::vector<double>& xs, const SpectralParameter& mu,
                                        const QuadratureSpec& quad = {}, int A0 = 41);
std::vector<WeightResult> weight_W_many(const std::vector<double>& xs, const SpectralParameter& mu,
                                        const QuadratureSpec& quad = {}, int A0 = 41);

// V(x) / |G(0)| in closed form: G(0) erfc(log x / 2)/2 plus Gaussian moments
// of the polynomial (G(u) - G(0))/u
cplx weight_V_closed(double x, const SpectralParameter& mu, int A0 = 41);

}  // namespace kforge
