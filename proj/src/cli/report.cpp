#include "boltzchain/cli/report.hpp"

#include "boltzchain/cli/chain_file.hpp"
#include "boltzchain/error.hpp"

#include <cstdio>
#include <utility>
#include <vector>

namespace boltzchain::cli {

namespace {

std::vector<std::pair<std::string, std::string>> summary(const BoltzmannReport& r) {
    return {
        {"states", std::to_string(r.boltzmann_table.size())},
        {"rho", format_number(r.rho)},
        {"rho_tilde", format_number(r.rho_tilde)},
        {"r2", format_number(r.r2)},
        {"m_star", format_number(r.m_star)},
        {"b_star", format_number(r.b_star)},
        {"error_E", format_number(r.error_E)},
        {"var_log_q", format_number(r.var_log_q)},
        {"var_log_pi", format_number(r.var_log_pi)},
        {"var_log_psi", format_number(r.var_log_psi)},
        {"psi_constant", r.psi_constant ? "true" : "false"},
        {"k_bound", format_number(r.k_bound)},
        {"k_observed", format_number(r.k_observed)},
        {"pairwise_ratio_max", format_number(r.pairwise_ratio_max)},
        {"pairwise_bound", format_number(r.pairwise_bound)},
    };
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "structured") return ReportFormat::Structured;
    throw Error(ErrorCode::SyntaxError, "unknown report format '" + std::string(name) + "'");
}

std::string write_report(const BoltzmannReport& report, ReportFormat format) {
    std::string out;
    const auto fields = summary(report);
    switch (format) {
    case ReportFormat::Text: {
        for (const auto& [key, value] : fields) {
            out += key + " = " + value + "\n";
        }
        out += "\n";
        char line[160];
        std::snprintf(line, sizeof line, "%6s %20s %20s %20s %20s\n", "state", "q", "pi", "nu", "pi/nu");
        out += line;
        for (std::size_t i = 0; i < report.boltzmann_table.size(); ++i) {
            const auto& row = report.boltzmann_table[i];
            std::snprintf(line, sizeof line, "%6zu %20s %20s %20s %20s\n", i + 1, format_number(row.exit_rate).c_str(),
                          format_number(row.pi).c_str(), format_number(row.nu).c_str(),
                          format_number(row.ratio).c_str());
            out += line;
        }
        break;
    }
    case ReportFormat::Csv:
        for (const auto& [key, value] : fields) {
            out += "# " + key + "," + value + "\n";
        }
        out += "state,q,pi,nu,pi_over_nu\n";
        for (std::size_t i = 0; i < report.boltzmann_table.size(); ++i) {
            const auto& row = report.boltzmann_table[i];
            out += std::to_string(i + 1) + "," + format_number(row.exit_rate) + "," + format_number(row.pi) + "," +
                   format_number(row.nu) + "," + format_number(row.ratio) + "\n";
        }
        break;
    case ReportFormat::Structured:
        for (const auto& [key, value] : fields) {
            out += key + "=" + value + "\n";
        }
        for (std::size_t i = 0; i < report.boltzmann_table.size(); ++i) {
            const auto& row = report.boltzmann_table[i];
            const std::string prefix = "state." + std::to_string(i + 1) + ".";
            out += prefix + "q=" + format_number(row.exit_rate) + "\n";
            out += prefix + "pi=" + format_number(row.pi) + "\n";
            out += prefix + "nu=" + format_number(row.nu) + "\n";
            out += prefix + "pi_over_nu=" + format_number(row.ratio) + "\n";
        }
        break;
    }
    return out;
}

}  // namespace boltzchain::cli
