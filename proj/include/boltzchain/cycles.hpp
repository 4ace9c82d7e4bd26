#pragma once

#include "boltzchain/chain.hpp"

#include <cstddef>
#include <vector>

namespace boltzchain {

// Directed cycle i1 -> i2 -> ... -> in -> i1 over distinct 0-based states.
class Cycle {
public:
    // Throws BadCycle for fewer than 3 states or repeated indices.
    explicit Cycle(std::vector<std::size_t> states);

    const std::vector<std::size_t>& states() const noexcept { return states_; }
    std::size_t length() const noexcept { return states_.size(); }

    Cycle reversed() const;
    Cycle rotated(std::size_t shift) const;

private:
    std::vector<std::size_t> states_;
};

inline constexpr double kDetailedBalanceTolerance = 1e-10;

// Sum over cycle edges of log(forward) - log(reverse). Throws BadCycle for an
// out-of-range state and MissingEdge when any forward or reverse entry is zero.
double cycle_force(const RateMatrix& m, const Cycle& c);
double cycle_force(const JumpChain& p, const Cycle& c);

bool microscopically_reversible(const RateMatrix& m);

// max_{i!=j} |pi_i q_ij - pi_j q_ji| <= tol * max rate. Throws NotIrreducible.
bool is_detailed_balanced(const RateMatrix& m, double tol = kDetailedBalanceTolerance);

}  // namespace boltzchain
