#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eop/core.hpp"

namespace eop {

struct RunConfig {
    cplx tau{0.0, 1.0};
    std::string weight = "one"; // one | cos
    std::map<std::string, double> tolerances; // overrides keyed by check name
    std::uint64_t seed = 1;
    int jobs = 1;

    double tol(const std::string& name, double fallback) const;
    // Usage error on Im tau <= 0, non-positive tolerance, unknown weight.
    void validate() const;
};

struct CheckResult {
    std::string name;
    double residual = 0;
    double tol = 0;
    bool pass = false;
    std::string note;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    std::string error;            // exception text if the suite aborted
    bool expected_failure = false; // aborted at a confirmed Delta zero
    bool pass() const;
    double worst() const; // largest residual / tol
};

struct VerifyReport {
    RunConfig cfg;
    std::vector<SuiteResult> suites;
    // expected failures do not count against the run
    bool all_pass() const;
    std::string json() const;
};

std::vector<std::string> suite_names();
VerifyReport run_verify(const RunConfig& cfg);

// %.17g
std::string fmt_num(double x);

} // namespace eop
