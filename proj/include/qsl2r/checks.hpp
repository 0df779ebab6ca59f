#pragma once

#include <cstdint>

#include "qsl2r/double_alg.hpp"
#include "qsl2r/sampling.hpp"

namespace qsl2r {

/// Shared configuration for the verification suites.
struct SuiteConfig {
    QContext ctx;
    int truncation = 6;        // stabilizer weight truncation M
    double g_exponent = -1.0;  // candidate character k^s
    std::uint64_t seed = 20240901ULL;
};

std::vector<CheckReport> suite_spectrum(const SuiteConfig& cfg);
std::vector<CheckReport> suite_balance(const SuiteConfig& cfg);
std::vector<CheckReport> suite_integral(const SuiteConfig& cfg);
std::vector<CheckReport> suite_haar(const SuiteConfig& cfg);
std::vector<CheckReport> suite_gelfand(const SuiteConfig& cfg);
std::vector<CheckReport> suite_double(const SuiteConfig& cfg);
std::vector<CheckReport> suite_regrep(const SuiteConfig& cfg);
std::vector<CheckReport> suite_all(const SuiteConfig& cfg);

}  // namespace qsl2r
