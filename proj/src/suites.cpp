#include "kforge/suites.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "kforge/cache.hpp"
#include "kforge/errors.hpp"
#include "kforge/geometric.hpp"
#include "kforge/gram.hpp"
#include "kforge/hecke.hpp"
#include "kforge/kloosterman.hpp"
#include "kforge/resonator.hpp"
#include "kforge/symsq.hpp"

namespace kforge {

QuadratureSpec SuiteConfig::quad() const {
    QuadratureSpec q;
    q.height = quad_height;
    q.nodes_per_unit = nodes_per_unit;
    q.validate();
    return q;
}

SuiteConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    SuiteConfig c;
    try {
        c.default_tolerance = j.value("default_tolerance", c.default_tolerance);
        c.afe_alpha = j.value("afe_alpha", c.afe_alpha);
        c.A0 = j.value("A0", c.A0);
        c.seed = j.value("seed", c.seed);
        if (j.contains("quad")) {
            c.quad_height = j["quad"].value("height", c.quad_height);
            c.nodes_per_unit = j["quad"].value("nodes_per_unit", c.nodes_per_unit);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad config value: ") + e.what());
    }
    if (!(c.default_tolerance > 0.0)) throw InvalidArgument("default_tolerance must be positive");
    if (!(c.afe_alpha > 0.0 && c.afe_alpha < 0.5)) throw InvalidArgument("afe_alpha must lie in (0, 1/2)");
    if (c.A0 < 10) throw InvalidArgument("A0 must be at least 10");
    c.quad();
    return c;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kloosterman-identities", "hecke-relations", "symsq-factors", "gram",
                                                "transforms", "geometric", "resonator"};
    return names;
}

namespace {

using Task = std::function<VerificationReport()>;

// a failing precondition becomes a failed report instead of aborting the run
Task guarded(std::string suite, Task t) {
    return [suite = std::move(suite), t = std::move(t)]() {
        try {
            return t();
        } catch (const std::exception& e) {
            VerificationReport r;
            r.suite = suite;
            r.paper_ref = "exception";
            r.inputs = e.what();
            r.abs_diff = INFINITY;
            r.pass = false;
            return r;
        }
    };
}

template <class... T>
std::string cat(const T&... parts) {
    std::ostringstream o;
    (o << ... << parts);
    return o.str();
}

VerificationReport flag_report(std::string suite, std::string ref, std::string inputs, bool ok) {
    auto r = make_report(std::move(suite), std::move(ref), std::move(inputs), ok ? 1.0 : 0.0, 1.0, 0.0);
    return r;
}

std::vector<Task> kloosterman_tasks(const SuiteConfig& cfg) {
    const std::string S = "kloosterman-identities";
    std::vector<Task> t;
    for (i64 p : {3, 5, 7})
        t.push_back([p] {
            std::vector<VerificationReport> parts;
            for (i64 m1 = 0; m1 < p; ++m1)
                for (i64 n2 = 0; n2 < p; ++n2) parts.push_back(check_pp_closed_form(p, 1, n2, m1, 1));
            return combine_reports("kloosterman-identities", parts[0].paper_ref, cat("p=", p, " all (m1,n2) mod p"),
                                   parts);
        });
    std::mt19937_64 gen(cfg.seed);
    for (i64 p : {3, 5}) {
        std::array<i64, 4> a{};
        for (auto& x : a) x = static_cast<i64>(gen() % 50) + 1;
        t.push_back([p, a] { return check_p_p2_evaluation(p, a[0], a[1], a[2], a[3]); });
    }
    t.push_back([] { return check_factorization({1, 2, 3, 4, 15, 21, 3}, 3, 5, 3, 7); });
    t.push_back([] { return check_factorization({2, 1, 1, 5, 15, 21, 1}, 3, 5, 3, 7); });
    for (auto [D1, D2] : {std::pair<i64, i64>{2, 3}, {6, 10}, {4, 8}, {9, 12}})
        t.push_back([D1, D2] { return check_decomposition({2, 5, 3, 7, D1, D2, 1}); });
    t.push_back([] { return check_tilde_bound({1, 2, 3, 0, 5, 25, 1}); });
    t.push_back([] { return check_tilde_bound({3, 1, 2, 0, 6, 36, 1}); });
    t.push_back([S] {
        std::vector<VerificationReport> parts;
        for (i64 delta = 1; delta <= 15; delta += 2)
            for (i64 b : {1, 3})
                for (int sign : {1, -1}) {
                    CharacterSumQuery q;
                    q.delta = delta;
                    q.b = b;
                    q.p = delta % 5 == 0 ? 7 : 5;
                    q.sign = sign;
                    parts.push_back(make_report(S, "", "", character_sum_C(q), character_sum_C_reduced(q),
                                                1e-6 * static_cast<double>(delta * delta * b * b * 4)));
                }
        return combine_reports(S, "character sum: direct triple sum against the reduced divisor sum",
                               "odd delta <= 15, b in {1,3}, both signs", parts);
    });
    t.push_back([] {
        CharacterSumQuery q;
        q.delta = 25;
        q.b = 9;
        q.m2 = 5;
        q.p = 7;
        return check_C_bound(q);
    });
    return t;
}

std::vector<Task> hecke_tasks(const SuiteConfig& cfg) {
    std::vector<Task> t;
    const std::vector<i64> primes{3, 5, 7, 11, 13};
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        t.push_back([seed, primes] {
            auto src = random_tempered_source(primes, seed);
            std::vector<VerificationReport> parts{check_hecke_mn(src, 3, 9, 15), check_hecke_mn(src, 5, 27, 7),
                                                  check_hecke_n1(src, 45, 9, 5), check_hecke_n1(src, 21, 7, 33),
                                                  check_hecke_1n(src, 15, 25, 3), check_hecke_1n(src, 9, 27, 11)};
            return combine_reports("hecke-relations", "multiplication rules for A(m,n)", cat("seed=", seed), parts);
        });
    }
    for (double r : {0.0, 0.37, -1.3}) t.push_back([r] { return check_ramified_relations(5, cplx(0.0, r)); });
    t.push_back([cfg] {
        auto src = random_tempered_source({2, 3, 7}, cfg.seed);
        return check_usehecke_chain(5, cplx(0.0, 0.21), src, 1, 2, 3, 35);
    });
    return t;
}

std::vector<Task> symsq_tasks(const SuiteConfig& cfg) {
    const std::string S = "symsq-factors";
    std::vector<Task> t;
    t.push_back([cfg, S] {
        std::mt19937_64 gen(cfg.seed);
        std::vector<VerificationReport> parts;
        for (int i = 0; i < 30; ++i) {
            const double a = 2.0 * 3.141592653589793 * uniform01(gen());
            const double b = 2.0 * 3.141592653589793 * uniform01(gen());
            parts.push_back(check_local_factor(SatakeTriple::tempered(3 + 2 * (i % 3), a, b), cplx(1.0, 0.0)));
        }
        return combine_reports(S, parts[0].paper_ref, "30 tempered triples at s=1", parts);
    });
    t.push_back([S] {
        std::vector<VerificationReport> parts;
        for (int i = 0; i < 20; ++i)
            parts.push_back(check_local_factor(SatakeTriple::ramified_steinberg(5, cplx(0.0, -2.0 + 0.2 * i)), 1.0));
        return combine_reports(S, parts[0].paper_ref, "ramified rho grid at p=5, s=1", parts);
    });
    t.push_back([cfg, S] {
        std::mt19937_64 gen(cfg.seed + 1);
        std::vector<VerificationReport> parts;
        for (int i = 0; i < 20; ++i) {
            auto t2 = SatakeTriple::tempered(2, 6.283185307179586 * uniform01(gen()), 6.283185307179586 * uniform01(gen()));
            parts.push_back(check_lambda_table(t2, cplx(0.5, 1.0)));
            parts.push_back(check_lambda_table(t2, cplx(1.5, -2.0)));
        }
        return combine_reports(S, parts[0].paper_ref, "20 triples at p=2", parts);
    });
    t.push_back([S] {
        std::vector<VerificationReport> parts;
        for (i64 p : {3, 5, 7, 11})
            for (int i = 0; i < 10; ++i) {
                auto rn = root_number({{p, cplx(0.0, -1.5 + 0.3 * i)}});
                parts.push_back(make_report(S, "", "", rn.epsilon, rn.alternative, 1e-10));
                parts.push_back(make_report(S, "", "", std::abs(rn.epsilon), 1.0, 1e-10));
            }
        parts.push_back(make_report(S, "", "", root_number({{3, 0.0}}).epsilon, -1.0, 1e-10));
        return combine_reports(S, "root number: both expressions, unit modulus, rho = 0 gives -1",
                               "p in {3,5,7,11}, 10 rho each", parts);
    });
    t.push_back([S] {
        const i64 N = 3 * 5 * 7;
        return make_report(S, "conductor of the symmetric square at squarefree level", "N=105",
                           static_cast<double>(conductor(N)), static_cast<double>(N * N * N), 0.0);
    });
    return t;
}

std::vector<Task> gram_tasks(const SuiteConfig& cfg) {
    const std::string S = "gram";
    std::vector<Task> t;
    t.push_back([cfg, S] {
        std::vector<VerificationReport> parts;
        for (i64 p : primes_upto(97)) {
            if (p == 2) continue;
            auto src = random_tempered_source({p}, cfg.seed + static_cast<std::uint64_t>(p));
            auto G = gram_matrix(p, src(1, p), src(p, 1), 1.7);
            auto c = gram_schmidt(G);
            const Eigen::Matrix3cd I = c.T * G.G * c.T.adjoint();
            parts.push_back(make_report(S, "", "", (I - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-9));
            const double env = 10.0 * std::pow(static_cast<double>(p), kTheta3 - 0.5);
            auto e = make_report(S, "", "", c.max_abs(), env, 0.0);
            e.pass = c.max_abs() <= env;
            e.abs_diff = std::max(0.0, c.max_abs() - env);
            parts.push_back(e);
        }
        return combine_reports(S, "orthonormalised oldform basis and size of its coefficients", "odd p <= 97", parts);
    });
    t.push_back([cfg, S] {
        std::mt19937_64 gen(cfg.seed + 2);
        std::vector<VerificationReport> parts;
        for (int i = 0; i < 10; ++i) {
            auto tr = SatakeTriple::tempered(7, 6.283185307179586 * uniform01(gen()), 6.283185307179586 * uniform01(gen()));
            for (cplx s : {cplx(1.0, 0.0), cplx(1.5, 2.0), cplx(0.8, -1.0)}) {
                parts.push_back(check_rankin_local(tr, s));
                parts.push_back(check_shift_identity(tr, s));
                parts.push_back(check_curlyL_identity(tr, s));
            }
        }
        return combine_reports(S, "local Rankin-Selberg, shift and L_p identities", "10 triples x 3 s", parts);
    });
    return t;
}

std::vector<Task> transform_tasks(const SuiteConfig& cfg) {
    const std::string S = "transforms";
    std::vector<Task> t;
    const int A0 = cfg.A0;
    const QuadratureSpec quad = cfg.quad();
    t.push_back([S, A0] {
        auto h = standard_test_function(A0);
        const SpectralParameter mu = SpectralParameter::tempered(0.7, -1.9);
        const auto m = mu.values();
        std::vector<VerificationReport> parts;
        const cplx h0 = h(mu), s0 = spec_measure(mu);
        for (auto perm : {std::array<int, 3>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}}) {
            SpectralParameter w{m[static_cast<std::size_t>(perm[0])], m[static_cast<std::size_t>(perm[1])],
                                m[static_cast<std::size_t>(perm[2])]};
            parts.push_back(make_report(S, "", "", h(w), h0, 1e-10 * std::abs(h0)));
            parts.push_back(make_report(S, "", "", spec_measure(w), s0, 1e-10 * std::abs(s0)));
        }
        return combine_reports(S, "Weyl invariance of h and spec", "mu=(0.7i,-1.9i,1.2i)", parts);
    });
    t.push_back([S, A0] {
        std::vector<VerificationReport> parts;
        for (int n = 1; n <= A0; n += 2) {
            auto mu = SpectralParameter::make(cplx(0.5 * n, 0.3), cplx(-0.5 * n, 0.3), cplx(0.0, -0.6));
            parts.push_back(make_report(S, "", "", standard_test_function_direct(A0, mu), 0.0, 1e-10));
        }
        for (int n = -A0 + (A0 % 2); n <= A0; n += 2) {
            auto mu = SpectralParameter::make(0.25 - 0.5 * n, cplx(0.5 * n - 0.25, 0.4), cplx(0.0, -0.4));
            parts.push_back(make_report(S, "", "", standard_test_function_direct(A0, mu), 0.0, 1e-10));
        }
        return combine_reports(S, "zeros of the test function", "odd differences and even shifted sums", parts);
    });
    t.push_back([S, quad] {
        std::vector<VerificationReport> parts;
        for (double y : {0.05, 0.2, 1.0}) {
            auto mu = SpectralParameter::tempered(0.4, -1.1);
            parts.push_back(make_report(S, "", "", kernel_K_w4(y, mu, quad), kernel_K_w4_residues(y, mu),
                                        1e-8 * std::abs(kernel_K_w4_residues(y, mu)) + 1e-14));
        }
        return combine_reports(S, "w4 kernel: contour integral against its residue series", "y in {0.05,0.2,1}",
                               parts);
    });
    t.push_back([S, quad, A0] {
        auto h = standard_test_function(A0);
        auto rs = phi_w4_many({0.5, 3.0}, h, quad);
        std::vector<VerificationReport> parts;
        for (const auto& r : rs)
            parts.push_back(make_report(S, "", "", r.value, r.alternate,
                                        quad.doubling_tol * std::max(std::abs(r.value), 1e-9 * r.scale)));
        // Phi(-y) = conj Phi(y)
        auto neg = phi_w4_many({-0.5}, h, quad);
        parts.push_back(make_report(S, "", "", neg[0].value, std::conj(rs[0].value),
                                    quad.doubling_tol * std::abs(rs[0].value)));
        return combine_reports(S, "Phi_w4 node doubling and conjugation symmetry", "y in {0.5, 3, -0.5}", parts);
    });
    t.push_back([S, quad, A0] {
        auto mu = SpectralParameter::tempered(0.7, -0.2);
        const std::vector<double> xs{1e-2, 1.0, 1e3};
        QuadratureSpec shifted = quad;
        shifted.sigma_weight = 3.0;
        auto v = weight_V_many(xs, mu, quad, A0);
        auto v3 = weight_V_many(xs, mu, shifted, A0);
        std::vector<VerificationReport> parts;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const cplx c = weight_V_closed(xs[i], mu, A0);
            parts.push_back(make_report(S, "", "", v[i].value, c, 1e-10 * std::abs(c)));
            parts.push_back(make_report(S, "", "", v[i].value, v3[i].value, 1e-6 * std::abs(c)));
            parts.push_back(make_report(S, "", "", v[i].value, v[i].alternate, 1e-4 * std::abs(c)));
        }
        return combine_reports(S, "V weight: quadrature, closed form and contour shift", "x in {1e-2,1,1e3}",
                               parts);
    });
    t.push_back([S, quad, A0] {
        auto mu = SpectralParameter::tempered(0.7, -0.2);
        auto w = weight_W_many({1e-2, 1.0}, mu, quad, A0);
        std::vector<VerificationReport> parts;
        for (const auto& r : w) parts.push_back(make_report(S, "", "", r.value, r.alternate, 1e-4 * std::abs(r.value)));
        return combine_reports(S, "W weight node doubling", "x in {1e-2, 1}", parts);
    });
    return t;
}

std::vector<Task> geometric_tasks(const SuiteConfig& cfg) {
    const std::string S = "geometric";
    std::vector<Task> t;
    std::shared_ptr<SumCache> cache;
    if (!cfg.cache_dir.empty()) {
        std::filesystem::create_directories(cfg.cache_dir);
        cache = std::make_shared<SumCache>((std::filesystem::path(cfg.cache_dir) / "sums.jsonl").string());
    }
    for (i64 p : {3, 5})
        for (auto [m1, m2, n1, n2] : {std::array<i64, 4>{1, 1, 1, 1}, {7, 1, 4, 1}, {1, 7, 7, 9}})
            t.push_back([=] {
                GeometricTermSpec g{p, m1, m2, n1, n2, 10000, cfg.afe_alpha};
                std::vector<VerificationReport> parts;
                parts.push_back(flag_report(S, "", "S4", term_pairs(enumerate_S4_terms(g, false)) ==
                                                             brute_force_pairs(g, WeylCell::W4)));
                parts.push_back(flag_report(S, "", "S5", term_pairs(enumerate_S5_terms(g, false)) ==
                                                             brute_force_pairs(g, WeylCell::W5)));
                parts.push_back(flag_report(S, "", "S6", term_pairs(enumerate_S6_terms(g, false)) ==
                                                             brute_force_pairs(g, WeylCell::W6)));
                return combine_reports(S, "summation conditions: generator against brute-force filter",
                                       cat("p=", p, " m=(", m1, ",", m2, ") n=(", n1, ",", n2, ") cutoff=1e4"),
                                       parts);
            });
    t.push_back([=] {
        GeometricTermSpec g{3, 1, 1, 1, 1, 81, cfg.afe_alpha};
        std::vector<VerificationReport> parts;
        for (const auto& terms : {enumerate_S4_terms(g, true, cache.get()), enumerate_S5_terms(g, true, cache.get()),
                                  enumerate_S6_terms(g, true, cache.get())})
            for (const auto& term : terms) {
                KloostermanQuery q = term.cell == WeylCell::W4   ? KloostermanQuery{-term.eps1, 1, 1, 0, term.D2, term.D1, 1}
                                     : term.cell == WeylCell::W5 ? KloostermanQuery{term.eps1, 1, 1, 0, term.D1, term.D2, 1}
                                                                 : KloostermanQuery{term.eps2, term.eps1, 1, 1, term.D1, term.D2, 3};
                const cplx fresh = (term.cell == WeylCell::W6 ? gl3_twisted_sum(q) : gl3_tilde_sum(q)) /
                                   static_cast<double>(term.D1 * term.D2);
                parts.push_back(make_report(S, "", "", *term.value, fresh, cfg.default_tolerance));
            }
        return combine_reports(S, "term values against a fresh Kloosterman evaluation", "p=3 m=n=(1,1) cutoff=81",
                               parts);
    });
    t.push_back([=] {
        auto h = standard_test_function(cfg.A0);
        GeometricTermSpec g3{3, 1, 1, 1, 1, 100, cfg.afe_alpha}, g5{5, 1, 1, 1, 1, 100, cfg.afe_alpha};
        const cplx d3 = delta_term(g3, h), d5 = delta_term(g5, h);
        auto ratio = make_report(S, "", "", d3 / d5, 13.0 / 31.0, 1e-12);
        GeometricTermSpec off{3, 1, 1, 1, 5, 100, cfg.afe_alpha};
        auto zero = make_report(S, "", "", delta_term(off, h), 0.0, 0.0);
        auto positive = flag_report(S, "", "", d3.real() > 0.0);
        return combine_reports(S, "diagonal term: index factor P and the h spec integral", "p in {3,5}",
                               {ratio, zero, positive});
    });
    return t;
}

std::vector<Task> resonator_tasks(const SuiteConfig& cfg) {
    const std::string S = "resonator";
    std::vector<Task> t;
    const std::vector<i64> primes{3, 5, 7, 11, 13, 17, 19, 23, 29};
    const std::vector<std::pair<std::vector<i64>, std::vector<i64>>> lists{
        {{3}, {}}, {{3, 3}, {}}, {{5, 7}, {}}, {{9, 15, 7}, {}}, {{3, 5, 25}, {9, 5}}, {{27, 15, 21}, {3, 11}}};
    for (const auto& [ms, ns] : lists)
        t.push_back([=] {
            auto src = random_tempered_source(primes, cfg.seed);
            return resonator_expand(static_cast<int>(ms.size()), ms, ns, src);
        });
    t.push_back([S] {
        std::vector<VerificationReport> parts;
        for (int k = 1; k <= 3; ++k) {
            const auto ref = dseries_euler_coefficients(k, 3, 6);
            for (i64 p : {3, 5, 7}) {
                const auto c = dseries_euler_coefficients(k, p, 6);
                parts.push_back(make_report(S, "", "", static_cast<double>(c[1]), 0.0, 0.0));
                parts.push_back(make_report(S, "", "", static_cast<double>(c[2]), static_cast<double>(k * k), 0.0));
                parts.push_back(flag_report(S, "", "", c == ref));
                for (int r = 0; r <= 4; ++r)
                    parts.push_back(flag_report(S, "", "", static_cast<double>(c[static_cast<std::size_t>(r)]) <=
                                                               std::pow(r + 1.0, 6.0 * k)));
            }
        }
        return combine_reports(S, "Euler coefficients of the resonator Dirichlet series",
                               "k in 1..3, p in {3,5,7}, r <= 6", parts);
    });
    return t;
}

std::vector<Task> tasks_for(const std::string& name, const SuiteConfig& cfg) {
    std::vector<Task> raw;
    if (name == "kloosterman-identities") raw = kloosterman_tasks(cfg);
    else if (name == "hecke-relations") raw = hecke_tasks(cfg);
    else if (name == "symsq-factors") raw = symsq_tasks(cfg);
    else if (name == "gram") raw = gram_tasks(cfg);
    else if (name == "transforms") raw = transform_tasks(cfg);
    else if (name == "geometric") raw = geometric_tasks(cfg);
    else if (name == "resonator") raw = resonator_tasks(cfg);
    else throw UnknownSuite("no suite named '" + name + "'");
    std::vector<Task> out;
    for (auto& r : raw) out.push_back(guarded(name, std::move(r)));
    return out;
}

// work queue: workers pull tasks by index, the caller streams results in order
std::vector<VerificationReport> run_tasks(const std::vector<Task>& tasks, const ReportSink& sink) {
    const std::size_t n = tasks.size();
    std::vector<std::promise<VerificationReport>> promises(n);
    std::vector<std::future<VerificationReport>> futures;
    for (auto& p : promises) futures.push_back(p.get_future());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                Stopwatch sw;
                VerificationReport r = tasks[i]();
                if (r.ms == 0.0) r.ms = sw.ms();
                promises[i].set_value(std::move(r));
            }
        });
    std::vector<VerificationReport> out;
    for (auto& f : futures) {
        out.push_back(f.get());
        if (sink) sink(out.back());
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace

int run_suite(const std::string& name, const SuiteConfig& cfg, const ReportSink& sink,
              std::vector<SuiteSummary>* summary) {
    std::vector<std::string> names;
    if (name == "all") names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) names = {name};
    else throw UnknownSuite("no suite named '" + name + "'");
    bool ok = true;
    for (const auto& n : names) {
        SuiteSummary s{n, 0, 0};
        for (const auto& r : run_tasks(tasks_for(n, cfg), sink)) {
            (r.pass ? s.passed : s.failed)++;
            ok = ok && r.pass;
        }
        if (summary) summary->push_back(s);
    }
    return ok ? 0 : 1;
}

}  // namespace kforge
