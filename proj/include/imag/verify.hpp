#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace imag {

struct CheckResult {
    std::string label;
    double max_violation;  // amount by which the property was exceeded; <= tolerance passes
    double tolerance;
    bool passed;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed;
    int samples;
    std::vector<CheckResult> checks;
    bool passed;
};

SuiteReport run_roof_suite(int samples, std::uint64_t seed);
SuiteReport run_monotonicity_suite(int samples, std::uint64_t seed);
SuiteReport run_decay_suite(int grid_n = 101);
SuiteReport run_conversion_suite(int samples, std::uint64_t seed);

/// which in {roof, monotonicity, decay, conversion, all}.
std::vector<SuiteReport> run_suites(const std::string& which, int samples, std::uint64_t seed);

std::string format_report(const SuiteReport& report);

}  // namespace imag
