#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace boltzchain::cli {

// "min:max:steps" -> steps evenly spaced values, endpoints exact. Requires
// min < max and steps >= 2. Throws BadGridSpec.
std::vector<double> parse_grid_spec(std::string_view spec);

// Header "r2,rho_tilde,rho", r2 outer; undefined points print "nan".
// r2 values must be >= 0 and rho_tilde values within [-1, 1].
std::string emit_contour_csv(std::string_view r2_spec, std::string_view rho_tilde_spec);

}  // namespace boltzchain::cli
