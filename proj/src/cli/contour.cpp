#include "boltzchain/cli/contour.hpp"

#include "boltzchain/boltzmann.hpp"
#include "boltzchain/cli/chain_file.hpp"
#include "boltzchain/error.hpp"

#include <charconv>
#include <cmath>

namespace boltzchain::cli {

namespace {

double parse_bound(std::string_view text, std::string_view spec) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::BadGridSpec, "bad number in grid spec '" + std::string(spec) + "'");
    }
    return v;
}

}  // namespace

std::vector<double> parse_grid_spec(std::string_view spec) {
    const auto first = spec.find(':');
    const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
    if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
        throw Error(ErrorCode::BadGridSpec, "grid spec '" + std::string(spec) + "' must look like min:max:steps");
    }
    const double lo = parse_bound(spec.substr(0, first), spec);
    const double hi = parse_bound(spec.substr(first + 1, second - first - 1), spec);
    const auto steps_text = spec.substr(second + 1);
    std::size_t steps = 0;
    const auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
    if (steps_text.empty() || ec != std::errc() || ptr != steps_text.data() + steps_text.size()) {
        throw Error(ErrorCode::BadGridSpec, "step count in '" + std::string(spec) + "' must be an integer");
    }
    if (steps < 2 || steps > 1'000'000) {
        throw Error(ErrorCode::BadGridSpec, "step count must lie in [2, 1000000]");
    }
    if (!(lo < hi)) {
        throw Error(ErrorCode::BadGridSpec, "grid spec needs min < max");
    }
    std::vector<double> values(steps);
    const auto last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        values[i] = lo + (hi - lo) * static_cast<double>(i) / last;
    }
    values.back() = hi;
    return values;
}

std::string emit_contour_csv(std::string_view r2_spec, std::string_view rho_tilde_spec) {
    auto r2 = parse_grid_spec(r2_spec);
    auto rho_tilde = parse_grid_spec(rho_tilde_spec);
    if (r2.front() < 0.0) {
        throw Error(ErrorCode::BadGridSpec, "r2 values must be nonnegative");
    }
    if (rho_tilde.front() < -1.0 || rho_tilde.back() > 1.0) {
        throw Error(ErrorCode::BadGridSpec, "rho_tilde values must lie in [-1, 1]");
    }
    const RhoGrid grid = rho_grid(std::move(r2), std::move(rho_tilde));
    std::string out = "r2,rho_tilde,rho\n";
    for (std::size_t i = 0; i < grid.r2_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.rho_tilde_values.size(); ++j) {
            const auto& v = grid.at(i, j);
            out += format_number(grid.r2_values[i]) + "," + format_number(grid.rho_tilde_values[j]) + "," +
                   (v ? format_number(*v) : std::string("nan")) + "\n";
        }
    }
    return out;
}

}  // namespace boltzchain::cli
