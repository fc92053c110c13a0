#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kforge/archimedean.hpp"
#include "kforge/cache.hpp"
#include "kforge/errors.hpp"
#include "kforge/geometric.hpp"
#include "kforge/gram.hpp"
#include "kforge/hecke.hpp"
#include "kforge/kloosterman.hpp"
#include "kforge/report.hpp"
#include "kforge/resonator.hpp"
#include "kforge/suites.hpp"
#include "kforge/symsq.hpp"

using namespace kforge;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    double tolerance = 1e-8;
    i64 cutoff = 1000;
    std::uint64_t seed = 20240611;
    double quad_height = 20.0;
    std::string format = "json";
    std::string cache_dir;
};

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Plain records (evaluations) share the report formats: one JSON object per
// line, CSV with a header from the first record's keys, or aligned columns.
class Emitter {
public:
    explicit Emitter(Format f) : f_(f) {}

    void report(const VerificationReport& r) {
        ok_ = ok_ && r.pass;
        switch (f_) {
            case Format::Json: std::cout << to_json_line(r) << '\n'; break;
            case Format::Csv:
                if (!header_) std::cout << csv_header() << '\n';
                std::cout << to_csv_row(r) << '\n';
                break;
            case Format::Table:
                if (!header_) std::cout << table_header() << '\n';
                std::cout << to_table_row(r) << '\n';
                break;
        }
        header_ = true;
        std::cout.flush();
    }

    void record(const json& j) {
        switch (f_) {
            case Format::Json: std::cout << j.dump() << '\n'; break;
            case Format::Csv: {
                if (!header_) {
                    std::string line;
                    for (auto it = j.begin(); it != j.end(); ++it) line += (line.empty() ? "" : ",") + csv_escape(it.key());
                    std::cout << line << '\n';
                }
                std::string line;
                bool first = true;
                for (auto it = j.begin(); it != j.end(); ++it) {
                    line += (first ? "" : ",") + csv_escape(cell_text(it.value()));
                    first = false;
                }
                std::cout << line << '\n';
                break;
            }
            case Format::Table:
                for (auto it = j.begin(); it != j.end(); ++it)
                    std::cout << it.key() << " = " << cell_text(it.value()) << (std::next(it) == j.end() ? "\n" : "  ");
                break;
        }
        header_ = true;
    }

    bool ok() const { return ok_; }

private:
    Format f_;
    bool header_ = false;
    bool ok_ = true;
};

std::unique_ptr<SumCache> open_cache(const Globals& g) {
    const std::string dir = resolve_cache_dir(g.cache_dir);
    if (dir.empty()) return nullptr;
    std::filesystem::create_directories(dir);
    return std::make_unique<SumCache>((std::filesystem::path(dir) / "sums.jsonl").string());
}

QuadratureSpec quad_from(const Globals& g) {
    QuadratureSpec q;
    q.height = g.quad_height;
    q.validate();
    return q;
}

std::vector<i64> prime_support(const std::vector<i64>& nums) {
    std::vector<i64> ps;
    for (i64 n : nums)
        for (auto [p, e] : factorize(n)) {
            (void)e;
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
        }
    return ps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GL(3) prime-level explicit formulas: evaluation and identity checks"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tolerance", g.tolerance, "tolerance for checks that are not formula-bound");
    app.add_option("--cutoff", g.cutoff, "D1 D2 cutoff for geometric enumeration");
    app.add_option("--seed", g.seed, "seed for random Satake parameters");
    app.add_option("--quad-height", g.quad_height, "vertical half-height of the s-contours");
    app.add_option("--format", g.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--cache-dir", g.cache_dir, "directory of the Kloosterman sum cache (also KFORGE_CACHE)");
    app.fallthrough();

    // kloosterman
    auto* kl = app.add_subcommand("kloosterman", "GL(3) Kloosterman sums");
    kl->require_subcommand(1);
    KloostermanQuery kq;
    std::string kind = "twisted";
    auto add_query = [&](CLI::App* c) {
        c->add_option("--n1", kq.n1);
        c->add_option("--n2", kq.n2);
        c->add_option("--m1", kq.m1);
        c->add_option("--m2", kq.m2);
        c->add_option("--D1", kq.D1);
        c->add_option("--D2", kq.D2);
        c->add_option("--N", kq.N);
    };
    auto* kl_eval = kl->add_subcommand("eval", "evaluate a sum");
    add_query(kl_eval);
    kl_eval->add_option("--kind", kind, "tilde, twisted or classical (m1, n1, D1)")
        ->check(CLI::IsMember({"tilde", "twisted", "classical"}));
    auto* kl_check = kl->add_subcommand("check", "check an identity");
    add_query(kl_check);
    std::string identity = "decomposition";
    std::vector<i64> split;
    kl_check->add_option("--identity", identity, "pp, pp2, decomposition, factorization, tilde-bound")
        ->check(CLI::IsMember({"pp", "pp2", "decomposition", "factorization", "tilde-bound"}));
    kl_check->add_option("--split", split, "t1 u1 t2 u2 for the factorization")->expected(4);

    // hecke
    auto* he = app.add_subcommand("hecke", "Fourier coefficients from Satake parameters");
    he->require_subcommand(1);
    i64 hm = 1, hn = 1, hn1 = 1, hn2 = 1;
    auto* he_eval = he->add_subcommand("eval", "A(m, n) for a seeded random tempered form");
    he_eval->add_option("m", hm)->required();
    he_eval->add_option("n", hn)->required();
    auto* he_check = he->add_subcommand("check", "multiplication rules at (m, n1, n2)");
    he_check->add_option("m", hm)->required();
    he_check->add_option("n1", hn1)->required();
    he_check->add_option("n2", hn2)->required();

    // symsq
    auto* sy = app.add_subcommand("symsq", "symmetric square local data");
    sy->require_subcommand(1);
    i64 sp = 3;
    double th1 = 0.3, th2 = 1.1, sre = 1.0, sim = 0.0;
    std::vector<double> rhos;
    auto* sy_factor = sy->add_subcommand("factor", "local factor: closed product against the Schur series");
    sy_factor->add_option("--p", sp);
    sy_factor->add_option("--theta1", th1);
    sy_factor->add_option("--theta2", th2);
    auto* rho_opt = sy_factor->add_option("--rho", rhos, "imaginary part of rho (ramified)");
    sy_factor->add_option("--s", sre);
    sy_factor->add_option("--s-im", sim);
    auto* sy_root = sy->add_subcommand("rootnumber", "root number at the ramified primes");
    std::vector<i64> rprimes;
    sy_root->add_option("--p", rprimes)->required();
    sy_root->add_option("--rho", rhos, "imaginary parts of rho, one per prime")->required();
    auto* sy_coeffs = sy->add_subcommand("coeffs", "Dirichlet coefficients of L(s, sym^2)");
    i64 sN = 1, sX = 50;
    sy_coeffs->add_option("--N", sN, "squarefree level (primes dividing it are skipped)");
    sy_coeffs->add_option("--X", sX);

    // gram
    auto* gr = app.add_subcommand("gram", "oldform Gram matrix");
    gr->require_subcommand(1);
    i64 gp = 3;
    double norm2 = 1.0;
    auto* gr_compute = gr->add_subcommand("compute", "Gram matrix of the three translates");
    auto* gr_ortho = gr->add_subcommand("orthonormalize", "Gram-Schmidt constants");
    for (auto* c : {gr_compute, gr_ortho}) {
        c->add_option("--p", gp);
        c->add_option("--norm2", norm2);
    }

    // transform
    auto* tr = app.add_subcommand("transform", "archimedean transforms of the standard test function");
    tr->require_subcommand(1);
    std::vector<double> ys, xs;
    double y1 = 1.0, y2 = 1.0, t1 = 0.7, t2 = -0.2;
    int A0 = 41;
    bool w5 = false;
    auto* tr4 = tr->add_subcommand("phi4", "Phi_w4 (or Phi_w5) at the given y");
    tr4->add_option("--y", ys)->required();
    tr4->add_flag("--w5", w5);
    auto* tr6 = tr->add_subcommand("phi6", "Phi_w6 at (y1, y2)");
    tr6->add_option("--y1", y1);
    tr6->add_option("--y2", y2);
    auto* trw = tr->add_subcommand("weights", "V and W divided by |G(0, mu)|");
    trw->add_option("--x", xs)->required();
    trw->add_option("--t1", t1);
    trw->add_option("--t2", t2);
    for (auto* c : {tr4, tr6, trw}) c->add_option("--A0", A0);

    // geometric
    auto* ge = app.add_subcommand("geometric", "Kuznetsov geometric-side terms");
    ge->require_subcommand(1);
    auto* ge_enum = ge->add_subcommand("enumerate", "list S4, S5 or S6 terms");
    GeometricTermSpec gs;
    std::string cell = "S4";
    bool no_values = false;
    ge_enum->add_option("--cell", cell)->check(CLI::IsMember({"S4", "S5", "S6"}));
    ge_enum->add_option("--p", gs.p);
    ge_enum->add_option("--m1", gs.m1);
    ge_enum->add_option("--m2", gs.m2);
    ge_enum->add_option("--n1", gs.n1);
    ge_enum->add_option("--n2", gs.n2);
    ge_enum->add_option("--afe-alpha", gs.afe_alpha);
    ge_enum->add_flag("--no-values", no_values, "skip the Kloosterman sums");

    // resonator
    auto* re = app.add_subcommand("resonator", "resonator combinatorics");
    re->require_subcommand(1);
    auto* re_check = re->add_subcommand("check", "expansion of products of A(m^2,1), A(1,n^2); Euler coefficients");
    std::vector<i64> rms, rns;
    int rk = 2, rr = 6;
    i64 rp = 3;
    re_check->add_option("--m", rms, "m-list (odd, <= 30)");
    re_check->add_option("--n", rns, "n-list");
    re_check->add_option("--k", rk, "k for the Euler coefficients");
    re_check->add_option("--dseries-p", rp);
    re_check->add_option("--r-max", rr);

    // verify
    auto* ve = app.add_subcommand("verify", "run verification suites");
    std::string suite;
    std::string config_path;
    ve->add_option("suite", suite, "suite name or all")->required();
    ve->add_option("--config", config_path, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version requests exit 0; malformed command lines count as errors
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        Emitter out(parse_format(g.format));
        auto cache = open_cache(g);

        if (kl_eval->parsed()) {
            cplx v;
            if (kind == "classical") v = kloosterman_classical(kq.m1, kq.n1, kq.D1);
            else v = cached_sum(cache.get(), kq, kind == "tilde" ? SumKind::Tilde : SumKind::Twisted);
            out.record({{"kind", kind}, {"n1", kq.n1}, {"n2", kq.n2}, {"m1", kq.m1}, {"m2", kq.m2},
                        {"D1", kq.D1}, {"D2", kq.D2}, {"N", kq.N}, {"value", cjson(v)}});
        } else if (kl_check->parsed()) {
            if (identity == "pp") out.report(check_pp_closed_form(kq.N, kq.n1, kq.n2, kq.m1, kq.m2));
            else if (identity == "pp2") out.report(check_p_p2_evaluation(kq.N, kq.n1, kq.n2, kq.m1, kq.m2));
            else if (identity == "decomposition") out.report(check_decomposition(kq));
            else if (identity == "tilde-bound") out.report(check_tilde_bound(kq));
            else {
                if (split.size() != 4) throw InvalidSplit("--split needs t1 u1 t2 u2");
                out.report(check_factorization(kq, split[0], split[1], split[2], split[3]));
            }
        } else if (he_eval->parsed()) {
            auto src = random_tempered_source(prime_support({hm, hn}), g.seed);
            out.record({{"m", hm}, {"n", hn}, {"seed", g.seed}, {"A", cjson(src(hm, hn))}});
        } else if (he_check->parsed()) {
            auto src = random_tempered_source(prime_support({hm, hn1, hn2}), g.seed);
            out.report(check_hecke_mn(src, hm, hn1, hn2));
            out.report(check_hecke_n1(src, hm, hn1, hn2));
            out.report(check_hecke_1n(src, hm, hn1, hn2));
        } else if (sy_factor->parsed()) {
            const cplx s(sre, sim);
            SatakeTriple t = rho_opt->count() ? SatakeTriple::ramified_steinberg(sp, cplx(0.0, rhos.at(0)))
                                              : SatakeTriple::tempered(sp, th1, th2);
            out.report(check_local_factor(t, s));
        } else if (sy_root->parsed()) {
            if (rprimes.size() != rhos.size()) throw InvalidArgument("one --rho per --p");
            std::vector<std::pair<i64, cplx>> lp;
            for (std::size_t i = 0; i < rprimes.size(); ++i) lp.emplace_back(rprimes[i], cplx(0.0, rhos[i]));
            auto rn = root_number(lp);
            i64 N = 1;
            for (i64 p : rprimes) N *= p;
            out.record({{"N", N}, {"conductor", conductor(N)}, {"epsilon", cjson(rn.epsilon)},
                        {"alternative", cjson(rn.alternative)}});
        } else if (sy_coeffs->parsed()) {
            std::vector<i64> ps;
            for (i64 p : primes_upto(sX))
                if (sN % p != 0) ps.push_back(p);
            auto src = random_tempered_source(ps, g.seed);
            auto c = symsq_coefficients(src, sN, sX);
            for (i64 k = 1; k <= sX; ++k) out.record({{"n", k}, {"coefficient", cjson(c[static_cast<std::size_t>(k)])}});
        } else if (gr_compute->parsed() || gr_ortho->parsed()) {
            auto src = random_tempered_source({gp}, g.seed);
            auto G = gram_matrix(gp, src(1, gp), src(gp, 1), norm2);
            if (gr_compute->parsed()) {
                for (int i = 0; i < 3; ++i)
                    out.record({{"row", i}, {"0", cjson(G.G(i, 0))}, {"1", cjson(G.G(i, 1))}, {"2", cjson(G.G(i, 2))}});
            } else {
                auto c = gram_schmidt(G);
                out.record({{"p", gp}, {"c10", cjson(c.c10)}, {"c11", cjson(c.c11)}, {"c20", cjson(c.c20)},
                            {"c21", cjson(c.c21)}, {"c22", cjson(c.c22)}, {"max_abs", c.max_abs()}});
            }
        } else if (tr4->parsed()) {
            auto h = standard_test_function(A0);
            auto rs = phi_w4_many(ys, h, quad_from(g), w5);
            for (std::size_t i = 0; i < ys.size(); ++i)
                out.record({{"y", ys[i]}, {"value", cjson(rs[i].value)}, {"error", rs[i].error},
                            {"converged", converged(rs[i], quad_from(g))}});
        } else if (tr6->parsed()) {
            auto h = standard_test_function(A0);
            auto r = phi_w6_many({{y1, y2}}, h, quad_from(g))[0];
            out.record({{"y1", y1}, {"y2", y2}, {"value", cjson(r.value)}, {"error", r.error},
                        {"converged", converged(r, quad_from(g))}});
        } else if (trw->parsed()) {
            auto mu = SpectralParameter::tempered(t1, t2);
            auto q = quad_from(g);
            auto v = weight_V_many(xs, mu, q, A0);
            auto w = weight_W_many(xs, mu, q, A0);
            for (std::size_t i = 0; i < xs.size(); ++i)
                out.record({{"x", xs[i]}, {"V", cjson(v[i].value)}, {"V_error", v[i].error}, {"W", cjson(w[i].value)},
                            {"W_error", w[i].error}, {"log_abs_G0", v[i].log_abs_G0}});
        } else if (ge_enum->parsed()) {
            gs.cutoff = g.cutoff;
            auto terms = cell == "S4"   ? enumerate_S4_terms(gs, !no_values, cache.get())
                         : cell == "S5" ? enumerate_S5_terms(gs, !no_values, cache.get())
                                        : enumerate_S6_terms(gs, !no_values, cache.get());
            for (const auto& t : terms) {
                json j{{"cell", cell}, {"D1", t.D1}, {"D2", t.D2}, {"eps1", t.eps1}, {"eps2", t.eps2},
                       {"arg1", t.arg1}, {"arg2", t.arg2}};
                j["value"] = t.value ? cjson(*t.value) : json(nullptr);
                out.record(j);
            }
        } else if (re_check->parsed()) {
            if (!rms.empty()) {
                auto src = random_tempered_source(prime_support([&] {
                                                      auto all = rms;
                                                      all.insert(all.end(), rns.begin(), rns.end());
                                                      return all;
                                                  }()),
                                                  g.seed);
                out.report(resonator_expand(static_cast<int>(rms.size()), rms, rns, src));
            }
            auto c = dseries_euler_coefficients(rk, rp, rr);
            out.record({{"k", rk}, {"p", rp}, {"c", c}});
        } else if (ve->parsed()) {
            SuiteConfig cfg;
            if (!config_path.empty()) cfg = load_config(config_path);
            if (app.get_option("--seed")->count()) cfg.seed = g.seed;
            if (app.get_option("--tolerance")->count()) cfg.default_tolerance = g.tolerance;
            if (app.get_option("--quad-height")->count()) cfg.quad_height = g.quad_height;
            cfg.cache_dir = resolve_cache_dir(g.cache_dir);
            std::vector<SuiteSummary> summary;
            int code = run_suite(suite, cfg, [&](const VerificationReport& r) { out.report(r); }, &summary);
            for (const auto& s : summary)
                std::cerr << s.name << ": " << s.passed << " passed, " << s.failed << " failed\n";
            return code;
        }
        return out.ok() ? 0 : 1;
    } catch (const UnknownSuite& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
