#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "kforge/cache.hpp"
#include "kforge/errors.hpp"
#include "kforge/report.hpp"
#include "kforge/suites.hpp"

using namespace kforge;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("kforge_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("reports serialise in a fixed key order") {
    auto r = make_report("s", "a, \"quoted\" ref", "x=1", cplx(1.0, 2.0), cplx(1.0, 2.0 + 1e-12), 1e-9);
    REQUIRE(r.pass);
    REQUIRE(r.abs_diff == Catch::Approx(1e-12).margin(1e-15));
    const std::string line = to_json_line(r);
    REQUIRE(line.rfind("{\"suite\":\"s\",\"paper_ref\"", 0) == 0);
    auto j = nlohmann::json::parse(line);
    REQUIRE(j["lhs"][1] == 2.0);
    REQUIRE(j["pass"] == true);
    auto bad = make_report("s", "", "", cplx(std::numeric_limits<double>::quiet_NaN(), 0.0), 0.0, 1.0);
    REQUIRE(!bad.pass);
    REQUIRE(nlohmann::json::parse(to_json_line(bad))["lhs"][0].is_null());
    REQUIRE(csv_escape("plain") == "plain");
    REQUIRE(csv_escape("a,\"b\"") == "\"a,\"\"b\"\"\"");
    REQUIRE(to_csv_row(r).rfind("s,\"a, \"\"quoted\"\" ref\",x=1,", 0) == 0);
    REQUIRE(parse_format("table") == Format::Table);
    REQUIRE_THROWS_AS(parse_format("xml"), InvalidArgument);
    auto c = combine_reports("s", "both", "", {r, bad});
    REQUIRE(!c.pass);
}

TEST_CASE("sum cache persists, reloads and skips damaged lines") {
    auto dir = scratch_dir("cache");
    const std::string path = (dir / "sums.jsonl").string();
    KloostermanQuery q{1, 2, 3, 0, 3, 9, 1};
    {
        SumCache cache(path);
        REQUIRE(!cache.get(SumCache::key(q, SumKind::Tilde)));
        const cplx v = cached_sum(&cache, q, SumKind::Tilde);
        REQUIRE(std::abs(v - gl3_tilde_sum(q)) < 1e-15);
        REQUIRE(cache.size() == 1);
    }
    {
        std::ofstream(path, std::ios::app) << "not json\n";
        SumCache cache(path);
        REQUIRE(cache.size() == 1);
        REQUIRE(cache.skipped_lines() == 1);
        REQUIRE(std::abs(*cache.get(SumCache::key(q, SumKind::Tilde)) - gl3_tilde_sum(q)) < 1e-15);
    }
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    REQUIRE(nlohmann::json::parse(header)["kforge_cache"] == 1);
    // residues are canonicalised, so shifted arguments share a key
    REQUIRE(SumCache::key({1, 2, 3, 0, 3, 9, 1}, SumKind::Tilde) == SumCache::key({28, 2, 3, 0, 3, 9, 1}, SumKind::Tilde));
    REQUIRE(SumCache::key(q, SumKind::Tilde) != SumCache::key(q, SumKind::Twisted));
    REQUIRE(cached_sum(nullptr, q, SumKind::Tilde) == gl3_tilde_sum(q));
    fs::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
    ::setenv("KFORGE_CACHE", "/tmp/from_env", 1);
    REQUIRE(resolve_cache_dir("") == "/tmp/from_env");
    REQUIRE(resolve_cache_dir("/tmp/flag") == "/tmp/flag");
    ::unsetenv("KFORGE_CACHE");
    REQUIRE(resolve_cache_dir("").empty());
}

TEST_CASE("configuration parsing") {
    auto c = parse_config(R"({"default_tolerance": 1e-6, "quad": {"height": 25}, "seed": 7})");
    REQUIRE(c.default_tolerance == 1e-6);
    REQUIRE(c.quad_height == 25.0);
    REQUIRE(c.seed == 7);
    REQUIRE(c.A0 == 41);
    REQUIRE(c.quad().height == 25.0);
    REQUIRE_THROWS_AS(parse_config("{"), InvalidArgument);
    REQUIRE_THROWS_AS(parse_config(R"({"afe_alpha": 0.7})"), InvalidArgument);
    REQUIRE_THROWS_AS(parse_config(R"({"quad": {"height": 5}})"), InvalidArgument);
    REQUIRE_THROWS_AS(parse_config(R"({"A0": "many"})"), InvalidArgument);
    REQUIRE_THROWS_AS(load_config("/nonexistent/config.json"), InvalidArgument);
}

TEST_CASE("suites run deterministically and reject unknown names") {
    REQUIRE(suite_names().size() == 7);
    REQUIRE_THROWS_AS(run_suite("nosuch", SuiteConfig{}, [](const VerificationReport&) {}), UnknownSuite);
    std::vector<std::string> first, second;
    std::vector<SuiteSummary> summary;
    REQUIRE(run_suite("symsq-factors", SuiteConfig{}, [&](const VerificationReport& r) { first.push_back(r.inputs + r.paper_ref); },
                      &summary) == 0);
    REQUIRE(summary.size() == 1);
    REQUIRE(summary[0].failed == 0);
    REQUIRE(static_cast<std::size_t>(summary[0].passed) == first.size());
    run_suite("symsq-factors", SuiteConfig{}, [&](const VerificationReport& r) { second.push_back(r.inputs + r.paper_ref); });
    REQUIRE(first == second);
}
