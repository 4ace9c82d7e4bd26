#pragma once

#include "boltzchain/boltzmann.hpp"

#include <string>
#include <string_view>

namespace boltzchain::cli {

enum class ReportFormat { Text, Csv, Structured };

// Throws SyntaxError for an unknown name.
ReportFormat parse_report_format(std::string_view name);

// Text: "key = value" summary lines then an aligned per-state table.
// Csv: summary as "# key,value" comment lines, then header
//      "state,q,pi,nu,pi_over_nu" and one row per state.
// Structured: flat "key=value" lines; table rows as "state.<i>.<column>=value".
// States are 1-based; numbers carry 12 significant digits.
std::string write_report(const BoltzmannReport& report, ReportFormat format);

}  // namespace boltzchain::cli
