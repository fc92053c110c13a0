#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kforge/archimedean.hpp"
#include "kforge/report.hpp"

namespace kforge {

struct SuiteConfig {
    double default_tolerance = 1e-8;
    double afe_alpha = 0.04;
    int A0 = 41;
    double quad_height = 20.0;
    int nodes_per_unit = 32;
    std::uint64_t seed = 20240611;
    std::string cache_dir;  // empty: no sum cache

    QuadratureSpec quad() const;
};

// JSON keys: default_tolerance, afe_alpha, A0, quad: {height, nodes_per_unit}, seed.
// Missing keys keep their defaults; throws InvalidArgument on bad values.
SuiteConfig load_config(const std::string& path);
SuiteConfig parse_config(const std::string& json_text);

const std::vector<std::string>& suite_names();

struct SuiteSummary {
    std::string name;
    int passed = 0;
    int failed = 0;
};

using ReportSink = std::function<void(const VerificationReport&)>;

// Runs one suite or "all"; reports stream to `sink` in a fixed order.
// Returns 0 iff every report passed.  Throws UnknownSuite.
int run_suite(const std::string& name, const SuiteConfig& cfg, const ReportSink& sink,
              std::vector<SuiteSummary>* summary = nullptr);

}  // namespace kforge
