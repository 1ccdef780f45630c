#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace surfmaps {

/// Outcome of one verification check.
struct CheckResult {
    std::string name;
    int criterion = 0;
    bool pass = false;
    long long compared = 0;      // items or coefficients compared
    std::string counterexample;  // canonical encoding or offending monomial
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    int edges = 4;        // corpus bound in edges (closure edges for blossoming maps)
    uint64_t seed = 1;    // flip gauge seed for the gauge check
};

CheckResult check_roundtrip(const VerifyOptions& o);      // 1
CheckResult check_weights(const VerifyOptions& o);        // 2
CheckResult check_counts(const VerifyOptions& o);         // 3
CheckResult check_walks(const VerifyOptions& o);          // 4
CheckResult check_core_products(const VerifyOptions& o);  // 5
CheckResult check_rootable(const VerifyOptions& o);       // 6
CheckResult check_shortcut(const VerifyOptions& o);       // 7
CheckResult check_offsets(const VerifyOptions& o);        // 8
CheckResult check_rationality(const VerifyOptions& o);    // 9
CheckResult check_gauge(const VerifyOptions& o);          // 10

/// Suite names: all, roundtrip, weights, counts, walks, products, rootable,
/// shortcut, offset, rationality, gauge. Throws MapError(UnknownSuite).
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& o);
std::vector<std::string> suite_names();

std::string report_json(const std::vector<CheckResult>& r);
std::string report_table(const std::vector<CheckResult>& r);

}  // namespace surfmaps
