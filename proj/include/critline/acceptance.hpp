#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace critline {

/// Frozen calibration constants for the acceptance suite.
struct AcceptanceConfig {
    double gonek_slack = 0.6;      // allowed |shifted sum - main term| / (T log T)
    double mvt_rel_tol = 0.02;  // |E| / main for the prime polynomial
    double shape_limit = 10.0;     // ceiling for the theorem-shape ratios
    int p4_samples = 64;           // log-spaced heights in [500, 1e4]
    std::vector<int> known_failures;  // criteria allowed to fail without failing the run


    /// Keys as above; missing keys keep their defaults.
    static AcceptanceConfig load(const std::filesystem::path& path);
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Extra table rows (trend tables, calibration values) emitted by a criterion.
using ReportSink = std::function<void(const std::string& line)>;

/// Runs the selected criteria (all when `only` is empty) in order. Errors
/// inside a criterion turn into a failed result carrying the message.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {},
                                            const ReportSink& report = {});

/// Comma-separated criterion ids, e.g. "7, 10".
std::vector<int> parse_id_list(const std::string& text);

/// One line: `PASS  7 fourth-moment shape  (12.3 s)  detail`.
std::string format_result(const CriterionResult& r);

}  // namespace critline
