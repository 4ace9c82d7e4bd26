#pragma once

#include "boltzchain/chain.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace boltzchain {

enum class ExampleChain { Q1, Q2 };

// The two four-state nonreversible chains with exit rates (4,8,16,32) and (6,6,6,6).
RateMatrix example_chain(ExampleChain which);

// Circulant P_n with p_ij = a_{(j-i) mod n}, a_k = 2^-k for k <= n-2 and
// a_{n-1} = 2^-(n-2). Doubly stochastic. Throws BadSize for n < 3.
JumpChain cyclic_doubly_stochastic(std::size_t n);

struct GeometricExitRates {
    double base = 2.0;  // q_i = base^(i-1), 1-based i
};
struct ExplicitExitRates {
    std::vector<double> values;
};
using ExitRatePreset = std::variant<GeometricExitRates, ExplicitExitRates>;

std::vector<double> exit_rates_for(const ExitRatePreset& preset, std::size_t n);

// lift_jump_chain(cyclic_doubly_stochastic(n), exit_rates). Throws
// ConstantExitRates when require_nonconstant is set and all rates agree.
RateMatrix prop5_chain(std::size_t n, std::span<const double> exit_rates, bool require_nonconstant = true);
RateMatrix prop5_chain(std::size_t n, const ExitRatePreset& preset, bool require_nonconstant = true);

// Every directed rate i.i.d. uniform on [low, high]. Throws BadBounds, BadSize.
RateMatrix random_iid_chain(std::size_t n, double low, double high, std::uint64_t seed);

// Every directed rate 10^u with u i.i.d. uniform on [-width, width].
RateMatrix random_heavy_tail_chain(std::size_t n, double width, std::uint64_t seed);

}  // namespace boltzchain
