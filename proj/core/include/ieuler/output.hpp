#pragma once

#include <string>

#include "ieuler/run.hpp"

namespace ieuler {

inline constexpr int output_schema_version = 1;

/// fields.csv, exact.csv, diag.csv, audit.txt and plot.gp-data under dir (created if missing).
void write_outputs(const RunReport& report, const std::string& dir);

std::string format_audit(const RunReport& report);

}  // namespace ieuler
