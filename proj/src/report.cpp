#include "kforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kforge/errors.hpp"

namespace kforge {

VerificationReport make_report(std::string suite, std::string paper_ref, std::string inputs,
                               std::complex<double> lhs, std::complex<double> rhs, double tol) {
    VerificationReport r;
    r.suite = std::move(suite);
    r.paper_ref = std::move(paper_ref);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_diff = std::abs(lhs - rhs);
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_diff = scale > 0 ? r.abs_diff / scale : 0.0;
    r.tol = tol;
    // NaN never passes
    r.pass = r.abs_diff <= tol;
    return r;
}

VerificationReport combine_reports(std::string suite, std::string paper_ref, std::string inputs,
                                   const std::vector<VerificationReport>& parts) {
    VerificationReport out;
    out.suite = std::move(suite);
    out.paper_ref = std::move(paper_ref);
    out.inputs = std::move(inputs);
    out.pass = true;
    double worst = -1.0;
    for (const auto& p : parts) {
        out.ms += p.ms;
        out.pass = out.pass && p.pass;
        double ratio = p.tol > 0 ? p.abs_diff / p.tol : (p.pass ? 0.0 : INFINITY);
        if (std::isnan(ratio)) ratio = INFINITY;
        if (ratio > worst) {
            worst = ratio;
            out.lhs = p.lhs;
            out.rhs = p.rhs;
            out.abs_diff = p.abs_diff;
            out.rel_diff = p.rel_diff;
            out.tol = p.tol;
        }
    }
    return out;
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "table") return Format::Table;
    throw InvalidArgument("unknown format '" + s + "'");
}

namespace {
nlohmann::json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}
}  // namespace

std::string to_json_line(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["paper_ref"] = r.paper_ref;
    j["inputs"] = r.inputs;
    j["lhs"] = {finite_or_null(r.lhs.real()), finite_or_null(r.lhs.imag())};
    j["rhs"] = {finite_or_null(r.rhs.real()), finite_or_null(r.rhs.imag())};
    j["abs_diff"] = finite_or_null(r.abs_diff);
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["ms"] = r.ms;
    return j.dump();
}

std::string csv_escape(const std::string& field) {
    bool quote = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
}  // namespace

std::string csv_header() {
    return "suite,paper_ref,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tol,pass,ms";
}

std::string to_csv_row(const VerificationReport& r) {
    std::ostringstream os;
    os << csv_escape(r.suite) << ',' << csv_escape(r.paper_ref) << ',' << csv_escape(r.inputs) << ','
       << num(r.lhs.real()) << ',' << num(r.lhs.imag()) << ',' << num(r.rhs.real()) << ','
       << num(r.rhs.imag()) << ',' << num(r.abs_diff) << ',' << num(r.tol) << ','
       << (r.pass ? "true" : "false") << ',' << num(r.ms);
    return os.str();
}

std::string table_header() {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-4s %-22s %-44s %11s %11s %9s", "ok", "suite", "check",
                  "abs_diff", "tol", "ms");
    return buf;
}

std::string to_table_row(const VerificationReport& r) {
    std::string ref = r.paper_ref.size() > 44 ? r.paper_ref.substr(0, 41) + "..." : r.paper_ref;
    char buf[300];
    std::snprintf(buf, sizeof buf, "%-4s %-22s %-44s %11.3e %11.3e %9.1f", r.pass ? "ok" : "FAIL",
                  r.suite.c_str(), ref.c_str(), r.abs_diff, r.tol, r.ms);
    return buf;
}

}  // namespace kforge
