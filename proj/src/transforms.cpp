#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "kforge/archimedean.hpp"
#include "kforge/errors.hpp"
#include "kforge/gamma.hpp"

namespace kforge {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

struct Node {
    cplx s;
    cplx ds;
};

void gl_segment(std::vector<Node>& out, cplx a, cplx b, int npu) {
    using GL = boost::math::quadrature::gauss<double, 16>;
    static const auto xs = GL::abscissa();
    static const auto ws = GL::weights();
    const double len = std::abs(b - a);
    const int panels = std::max(1, static_cast<int>(std::ceil(len * npu / 16.0)));
    for (int k = 0; k < panels; ++k) {
        cplx p = a + (b - a) * (static_cast<double>(k) / panels);
        cplx q = a + (b - a) * (static_cast<double>(k + 1) / panels);
        cplx mid = 0.5 * (p + q), half = 0.5 * (q - p);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0.0) {
                out.push_back({mid, half * ws[i]});
                continue;
            }
            out.push_back({mid - half * xs[i], half * ws[i]});
            out.push_back({mid + half * xs[i], half * ws[i]});
        }
    }
}

// sigma - i T0 -> sigma + i T0, with arms leaving at angle theta (Bent rule)
std::vector<Node> s_contour(double sigma, double T0, const QuadratureSpec& quad, int npu) {
    std::vector<Node> nodes;
    const cplx bot(sigma, -T0), top(sigma, T0);
    if (quad.rule == ContourRule::Bent) {
        gl_segment(nodes, bot + quad.arm_length * std::polar(1.0, -quad.arm_angle), bot, npu);
        gl_segment(nodes, bot, top, npu);
        gl_segment(nodes, top, top + quad.arm_length * std::polar(1.0, quad.arm_angle), npu);
    } else {
        gl_segment(nodes, bot, top, npu);
    }
    return nodes;
}

// the arms only decay once |s| exceeds roughly 8 |y|^{1/3}
double contour_height(const QuadratureSpec& quad, double tmax, double ymax) {
    return std::max({quad.height, tmax + 4.0, 8.0 * std::cbrt(ymax)});
}

// per-pair tables of the standard test function on the t-lattice
struct PairTables {
    int M;
    double step;
    std::vector<double> odd, even, spec;  // index d + 2M
    double at(const std::vector<double>& v, int d) const { return v[static_cast<std::size_t>(d + 2 * M)]; }
};

PairTables pair_tables(int A0, double step, int M) {
    PairTables T{M, step, {}, {}, {}};
    const int n = 4 * M + 1;
    T.odd.resize(static_cast<std::size_t>(n));
    T.even.resize(static_cast<std::size_t>(n));
    T.spec.resize(static_cast<std::size_t>(n));
    for (int d = -2 * M; d <= 2 * M; ++d) {
        const double x = d * step;
        double lo = 0.0, le = 0.0;
        for (int m = -A0; m <= A0; ++m) {
            if (m % 2 != 0)
                lo += 0.5 * std::log(x * x + static_cast<double>(m) * m);
            else
                le += std::log((0.5 - m) * (0.5 - m) + x * x);  // |1/2 + i x - m|^2
        }
        const std::size_t idx = static_cast<std::size_t>(d + 2 * M);
        T.odd[idx] = lo;
        T.even[idx] = le;
        T.spec[idx] = d == 0 ? -INFINITY : std::log(std::abs(x * std::tanh(0.5 * kPi * x)));
    }
    return T;
}

}  // namespace

MuLattice build_mu_lattice(const TestFunctionSpec& h, double step, double decades) {
    if (step <= 0.0) throw InvalidArgument("lattice step must be positive");
    const double tscan = 40.0;
    const int M = static_cast<int>(std::ceil(tscan / step));
    std::vector<int> k1s, k2s;
    std::vector<double> logw, sgn;

    if (h.kind == TestFunctionKind::Standard) {
        const PairTables T = pair_tables(h.A0, step, M);
        // on tempered parameters h = -exp(-sum t^2) (odd product) (even product);
        // each odd product over |n| <= A0 has sign (-1)^{#pairs}
        int odd_count = 0;
        for (int m = -h.A0; m <= h.A0; ++m) odd_count += (m % 2 != 0);
        const double h_sign = ((odd_count / 2) * 3) % 2 == 0 ? -1.0 : 1.0;
        // spec = -prod d tanh(pi d / 2) on tempered parameters, dmu = -dt1 dt2
        const double sign = h_sign;
        for (int a = -M; a <= M; ++a)
            for (int b = -M; b < a; ++b) {
                const int c = -a - b;
                if (!(b > c) || c < -M) continue;
                const double t1 = a * step, t2 = b * step, t3 = c * step;
                double L = -(t1 * t1 + t2 * t2 + t3 * t3) - h.log_scale;
                L += T.at(T.odd, a - b) + T.at(T.odd, b - c) + T.at(T.odd, a - c);
                L += T.at(T.even, 2 * a) + T.at(T.even, 2 * b) + T.at(T.even, 2 * c);
                L += T.at(T.even, a + b) + T.at(T.even, a + c) + T.at(T.even, b + c);
                L += T.at(T.spec, a - b) + T.at(T.spec, b - c) + T.at(T.spec, a - c);
                k1s.push_back(a);
                k2s.push_back(b);
                logw.push_back(L);
                sgn.push_back(sign);
            }
    } else {
        for (int a = -M; a <= M; ++a)
            for (int b = -M; b < a; ++b) {
                const int c = -a - b;
                if (!(b > c) || c < -M) continue;
                SpectralParameter mu = SpectralParameter::tempered(a * step, b * step);
                cplx v;
                try {
                    v = h(mu) * spec_measure(mu) * (-1.0);
                } catch (const TanPole&) {
                    continue;
                }
                if (v == 0.0) continue;
                k1s.push_back(a);
                k2s.push_back(b);
                logw.push_back(std::log(std::abs(v.real())));
                sgn.push_back(v.real() < 0 ? -1.0 : 1.0);
            }
    }

    double peak = -INFINITY;
    for (double L : logw) peak = std::max(peak, L);
    const double cut = peak - decades * std::log(10.0);
    MuLattice lat;
    lat.step = step;
    for (std::size_t i = 0; i < logw.size(); ++i) {
        if (!(logw[i] > cut)) continue;
        const int a = k1s[i], b = k2s[i], c = -a - b;
        lat.k1.push_back(a);
        lat.k2.push_back(b);
        // six Weyl images, all with the same weight
        lat.weight.push_back(6.0 * sgn[i] * std::exp(logw[i]) * step * step);
        lat.kmax = std::max({lat.kmax, std::abs(a), std::abs(b), std::abs(c)});
    }
    if (lat.kmax >= M) throw QuadratureNotConverged("test function not negligible at the lattice edge");
    return lat;
}

QuadResult integrate_h_spec(const TestFunctionSpec& h, const QuadratureSpec& quad) {
    auto sum = [](const MuLattice& L) {
        double s = 0.0, a = 0.0;
        for (double w : L.weight) s += w, a += std::abs(w);
        return std::pair{s, a};
    };
    auto [v1, a1] = sum(build_mu_lattice(h, quad.lattice_step, quad.lattice_decades));
    auto [v2, a2] = sum(build_mu_lattice(h, 0.5 * quad.lattice_step, quad.lattice_decades));
    (void)a2;
    QuadResult r;
    r.value = v1;
    r.error = std::abs(v2 - v1);
    r.scale = a1;
    return r;
}

bool converged(const QuadResult& r, const QuadratureSpec& quad) {
    return r.error <= quad.doubling_tol * std::max(std::abs(r.value), 1e-9 * r.scale);
}

cplx kernel_K_w4(double y, const SpectralParameter& mu, const QuadratureSpec& quad) {
    if (y == 0.0) throw InvalidArgument("y must be nonzero");
    quad.validate();
    double tm = 0.0;
    for (cplx m : mu.values()) tm = std::max(tm, std::abs(m.imag()));
    const double T0 = contour_height(quad, tm, std::abs(y));
    const int sg = y > 0 ? 1 : -1;
    cplx acc = 0.0;
    for (const Node& n : s_contour(quad.sigma_w4, T0, quad, quad.nodes_per_unit))
        acc += n.ds * std::exp(-n.s * std::log(std::abs(y))) * kernel_G_tilde(n.s, mu, sg);
    return acc / (2.0 * kPi * kI);
}

cplx kernel_K_w4_residues(double y, const SpectralParameter& mu, int kmax) {
    if (y == 0.0) throw InvalidArgument("y must be nonzero");
    const auto m = mu.values();
    const double ly = std::log(std::abs(y));
    const double sg = y > 0 ? 1.0 : -1.0;
    const double C = 1.0 / (12288.0 * std::pow(kPi, 3.5));
    cplx tot = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < kmax; ++k) {
            // Gamma((s - mu_j)/2) has residue 2 (-1)^k / k! at s = mu_j - 2k
            cplx s = m[j] - 2.0 * k;
            cplx lr = std::log(2.0) - std::lgamma(k + 1.0) - lgamma_lanczos(cplx(0.5 + k, 0.0));
            double sign = k % 2 ? -1.0 : 1.0;
            for (int l = 0; l < 3; ++l)
                if (l != j) lr += lgamma_lanczos(0.5 * (s - m[l])) - lgamma_lanczos(0.5 * (1.0 - s + m[l]));
            tot += sign * std::exp(lr - s * ly - 3.0 * s * std::log(kPi));
            // Gamma((1 + s - mu_j)/2) at s = mu_j - 1 - 2k
            s = m[j] - 1.0 - 2.0 * k;
            lr = std::log(2.0) - std::lgamma(k + 1.0) - lgamma_lanczos(cplx(1.5 + k, 0.0));
            for (int l = 0; l < 3; ++l)
                if (l != j) lr += lgamma_lanczos(0.5 * (1.0 + s - m[l])) - lgamma_lanczos(0.5 * (2.0 - s + m[l]));
            tot += sg * kI * sign * std::exp(lr - s * ly - 3.0 * s * std::log(kPi));
        }
    return C * tot;
}

namespace {

// Phi_w4 (or Phi_w5) for a batch of y on one contour and lattice
std::vector<cplx> phi_w4_raw(const std::vector<double>& ys, const MuLattice& lat, const QuadratureSpec& quad,
                             int npu, bool w5, std::vector<double>* scales) {
    double ymax = 0.0;
    for (double y : ys) ymax = std::max(ymax, std::abs(y));
    const double T0 = contour_height(quad, lat.tmax(), ymax);
    const auto nodes = s_contour(quad.sigma_w4, T0, quad, npu);
    const int K = lat.kmax;
    const double C = 1.0 / (12288.0 * std::pow(kPi, 3.5));
    const double flip = w5 ? -1.0 : 1.0;  // K_{w4}(-y; -mu)

    std::vector<cplx> F1(nodes.size()), F2(nodes.size());
    std::vector<cplx> r1(static_cast<std::size_t>(2 * K + 1)), r2(r1.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const cplx s = nodes[a].s;
        for (int k = -K; k <= K; ++k) {
            const cplx z = s - flip * kI * (k * lat.step);
            const std::size_t idx = static_cast<std::size_t>(k + K);
            r1[idx] = std::exp(lgamma_lanczos(0.5 * z) - lgamma_lanczos(0.5 * (1.0 - z)));
            r2[idx] = std::exp(lgamma_lanczos(0.5 * (1.0 + z)) - lgamma_lanczos(0.5 * (2.0 - z)));
        }
        cplx f1 = 0.0, f2 = 0.0;
        for (std::size_t i = 0; i < lat.weight.size(); ++i) {
            const std::size_t i1 = static_cast<std::size_t>(lat.k1[i] + K);
            const std::size_t i2 = static_cast<std::size_t>(lat.k2[i] + K);
            const std::size_t i3 = static_cast<std::size_t>(-lat.k1[i] - lat.k2[i] + K);
            f1 += lat.weight[i] * (r1[i1] * r1[i2] * r1[i3]);
            f2 += lat.weight[i] * (r2[i1] * r2[i2] * r2[i3]);
        }
        F1[a] = f1;
        F2[a] = f2;
    }
    std::vector<cplx> out;
    if (scales) scales->clear();
    for (double y : ys) {
        const double sg = (y > 0 ? 1.0 : -1.0) * flip;
        const double ly = std::log(std::abs(y)) + 3.0 * std::log(kPi);
        cplx acc = 0.0;
        double mag = 0.0;
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            cplx term = nodes[a].ds * std::exp(-nodes[a].s * ly) * (F1[a] + sg * kI * F2[a]);
            acc += term;
            mag += std::abs(term);
        }
        out.push_back(C * acc / (2.0 * kPi * kI));
        if (scales) scales->push_back(C * mag / (2.0 * kPi));
    }
    return out;
}

std::vector<QuadResult> refine(const std::vector<cplx>& base, const std::vector<double>& scale,
                               const std::vector<cplx>& fine_s, const std::vector<cplx>& fine_mu, int nodes) {
    std::vector<QuadResult> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        QuadResult r;
        r.value = base[i];
        const double es = std::abs(fine_s[i] - base[i]), em = std::abs(fine_mu[i] - base[i]);
        r.error = std::max(es, em);
        r.alternate = es >= em ? fine_s[i] : fine_mu[i];
        r.scale = scale[i];
        r.nodes = nodes;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<QuadResult> phi_w4_many(const std::vector<double>& ys, const TestFunctionSpec& h,
                                    const QuadratureSpec& quad, bool w5) {
    quad.validate();
    for (double y : ys)
        if (!(std::abs(y) >= 1e-6 && std::abs(y) <= 1e6)) throw InvalidArgument("|y| must lie in [1e-6, 1e6]");
    const MuLattice lat = build_mu_lattice(h, quad.lattice_step, quad.lattice_decades);
    const MuLattice fine = build_mu_lattice(h, 0.5 * quad.lattice_step, quad.lattice_decades);
    std::vector<double> scale;
    auto base = phi_w4_raw(ys, lat, quad, quad.nodes_per_unit, w5, &scale);
    auto fs = phi_w4_raw(ys, lat, quad, 2 * quad.nodes_per_unit, w5, nullptr);
    auto fm = phi_w4_raw(ys, fine, quad, quad.nodes_per_unit, w5, nullptr);
    return refine(base, scale, fs, fm, static_cast<int>(lat.weight.size()));
}

QuadResult phi_w4(double y, const TestFunctionSpec& h, const QuadratureSpec& quad) {
    QuadResult r = phi_w4_many({y}, h, quad, false)[0];
    if (!converged(r, quad)) throw QuadratureNotConverged("Phi_w4 node doubling");
    return r;
}

QuadResult phi_w5(double y, const TestFunctionSpec& h, const QuadratureSpec& quad) {
    QuadResult r = phi_w4_many({y}, h, quad, true)[0];
    if (!converged(r, quad)) throw QuadratureNotConverged("Phi_w5 node doubling");
    return r;
}

namespace {

std::vector<cplx> phi_w6_raw(const std::vector<std::pair<double, double>>& ys, const MuLattice& lat,
                             const QuadratureSpec& quad, int npu, std::vector<double>* scales) {
    double ymax = 0.0;
    for (auto [a, b] : ys) ymax = std::max({ymax, std::abs(a), std::abs(b)});
    const double T0 = contour_height(quad, lat.tmax(), ymax);
    const auto nodes = s_contour(quad.sigma_w6, T0, quad, npu);
    const Eigen::Index ns = static_cast<Eigen::Index>(nodes.size());
    const Eigen::Index N = static_cast<Eigen::Index>(lat.weight.size());
    const int K = lat.kmax;

    // ratio_d(z) = Gamma((d + z)/2) / Gamma((1 + d - z)/2), tabulated at z = s -+ i t
    // A_d(a, i) = prod_j ratio_d(s_a - mu_j) and B_d(b, i) = prod_j ratio_d(s_b + mu_j)
    std::array<Eigen::MatrixXcd, 2> A, B;
    for (int d = 0; d <= 1; ++d) {
        A[static_cast<std::size_t>(d)].resize(ns, N);
        B[static_cast<std::size_t>(d)].resize(ns, N);
    }
    std::vector<cplx> tab(static_cast<std::size_t>(2 * K + 1));
    for (int d = 0; d <= 1; ++d)
        for (Eigen::Index a = 0; a < ns; ++a) {
            const double dd = d;
            const cplx s = nodes[static_cast<std::size_t>(a)].s;
            for (int k = -K; k <= K; ++k) {
                const cplx z = s - kI * (k * lat.step);
                tab[static_cast<std::size_t>(k + K)] =
                    std::exp(lgamma_lanczos(0.5 * (dd + z)) - lgamma_lanczos(0.5 * (1.0 + dd - z)));
            }
            for (Eigen::Index i = 0; i < N; ++i) {
                const int k1 = lat.k1[static_cast<std::size_t>(i)], k2 = lat.k2[static_cast<std::size_t>(i)];
                const int k3 = -k1 - k2;
                auto at = [&](int k) { return tab[static_cast<std::size_t>(k + K)]; };
                A[static_cast<std::size_t>(d)](a, i) = at(k1) * at(k2) * at(k3) * lat.weight[static_cast<std::size_t>(i)];
                B[static_cast<std::size_t>(d)](a, i) = at(-k1) * at(-k2) * at(-k3);
            }
        }

    // coupling Gamma((1 + d3 - s1 - s2)/2) / Gamma((d3 + s1 + s2)/2)
    std::array<Eigen::MatrixXcd, 2> Cd;
    for (int d3 = 0; d3 <= 1; ++d3) {
        Cd[static_cast<std::size_t>(d3)].resize(ns, ns);
        for (Eigen::Index a = 0; a < ns; ++a)
            for (Eigen::Index b = 0; b < ns; ++b) {
                const cplx S = nodes[static_cast<std::size_t>(a)].s + nodes[static_cast<std::size_t>(b)].s;
                Cd[static_cast<std::size_t>(d3)](a, b) =
                    std::exp(lgamma_lanczos(0.5 * (1.0 + static_cast<double>(d3) - S)) -
                             lgamma_lanczos(0.5 * (static_cast<double>(d3) + S)));
            }
    }

    const std::size_t ny = ys.size();
    std::vector<Eigen::VectorXcd> u(ny), v(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        u[j].resize(ns);
        v[j].resize(ns);
        const double l1 = std::log(kPi * kPi * std::abs(ys[j].first));
        const double l2 = std::log(kPi * kPi * std::abs(ys[j].second));
        for (Eigen::Index a = 0; a < ns; ++a) {
            const Node& n = nodes[static_cast<std::size_t>(a)];
            u[j](a) = n.ds * std::exp(-n.s * l1);
            v[j](a) = n.ds * std::exp(-n.s * l2);
        }
    }
    std::vector<cplx> acc(ny, 0.0);
    std::vector<double> mag(ny, 0.0);
    for (int d1 = 0; d1 <= 1; ++d1)
        for (int d2 = 0; d2 <= 1; ++d2) {
            const int d3 = (d1 + d2) % 2;
            Eigen::MatrixXcd F = A[static_cast<std::size_t>(d1)] * B[static_cast<std::size_t>(d2)].transpose();
            F.array() *= Cd[static_cast<std::size_t>(d3)].array();
            for (std::size_t j = 0; j < ny; ++j) {
                const double e1 = ys[j].first > 0 ? 1.0 : -1.0, e2 = ys[j].second > 0 ? 1.0 : -1.0;
                const double c = (d1 ? e1 : 1.0) * (d2 ? e2 : 1.0) * ((d1 && d2) ? -1.0 : 1.0);
                acc[j] += c * u[j].cwiseProduct(F * v[j]).sum();
                if (scales) mag[j] += (u[j].cwiseAbs().transpose() * F.cwiseAbs() * v[j].cwiseAbs())(0, 0);
            }
        }
    const double norm = 1.0 / (1024.0 * std::pow(kPi, 2.5)) / (-4.0 * kPi * kPi);  // (2 pi i)^2
    std::vector<cplx> out;
    if (scales) scales->clear();
    for (std::size_t j = 0; j < ny; ++j) {
        out.push_back(acc[j] * norm);
        if (scales) scales->push_back(mag[j] * std::abs(norm));
    }
    return out;
}

}  // namespace

std::vector<QuadResult> phi_w6_many(const std::vector<std::pair<double, double>>& ys, const TestFunctionSpec& h,
                                    const QuadratureSpec& quad) {
    quad.validate();
    for (auto [a, b] : ys)
        for (double y : {a, b})
            if (!(std::abs(y) >= 1e-6 && std::abs(y) <= 1e6)) throw InvalidArgument("|y| must lie in [1e-6, 1e6]");
    const MuLattice lat = build_mu_lattice(h, quad.lattice_step_w6, quad.lattice_decades);
    const MuLattice fine = build_mu_lattice(h, 0.5 * quad.lattice_step_w6, quad.lattice_decades);
    std::vector<double> scale;
    auto base = phi_w6_raw(ys, lat, quad, quad.nodes_per_unit_w6, &scale);
    auto fs = phi_w6_raw(ys, lat, quad, 2 * quad.nodes_per_unit_w6, nullptr);
    auto fm = phi_w6_raw(ys, fine, quad, quad.nodes_per_unit_w6, nullptr);
    return refine(base, scale, fs, fm, static_cast<int>(lat.weight.size()));
}

QuadResult phi_w6(double y1, double y2, const TestFunctionSpec& h, const QuadratureSpec& quad) {
    QuadResult r = phi_w6_many({{y1, y2}}, h, quad)[0];
    if (!converged(r, quad)) throw QuadratureNotConverged("Phi_w6 node doubling");
    return r;
}

}  // namespace kforge
