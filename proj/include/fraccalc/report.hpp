#pragma once

#include <string>
#include <vector>

#include "fraccalc/theorem_harness.hpp"

namespace fraccalc::io {

inline constexpr int kReportSchema = 1;

/// JSON report document:
///   schema, tool_version, config_echo {suite, n, seed}, reports[],
///   aggregate_pass.
/// Keys keep a fixed order so equal inputs give equal bytes. Non-finite
/// details serialize as null.
std::string report_document(const std::vector<harness::CheckReport>& reports,
                            const harness::SuiteConfig& config);

}  // namespace fraccalc::io
