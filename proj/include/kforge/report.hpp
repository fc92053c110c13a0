#pragma once

#include <chrono>
#include <complex>
#include <string>
#include <vector>

namespace kforge {

struct VerificationReport {
    std::string suite;
    std::string paper_ref;
    std::string inputs;
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
    double ms = 0.0;
};

// Builds a report with pass <=> |lhs - rhs| <= tol.
VerificationReport make_report(std::string suite, std::string paper_ref, std::string inputs,
                               std::complex<double> lhs, std::complex<double> rhs, double tol);

// Folds a list of sub-checks into a single report keeping the worst one.
VerificationReport combine_reports(std::string suite, std::string paper_ref, std::string inputs,
                                   const std::vector<VerificationReport>& parts);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

enum class Format { Json, Csv, Table };

Format parse_format(const std::string& s);
std::string to_json_line(const VerificationReport& r);
std::string csv_header();
std::string to_csv_row(const VerificationReport& r);
std::string table_header();
std::string to_table_row(const VerificationReport& r);
std::string csv_escape(const std::string& field);

}  // namespace kforge
