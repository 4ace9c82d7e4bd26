#pragma once

#include "boltzchain/chain.hpp"
#include "boltzchain/stationary.hpp"

#include <cstdint>
#include <vector>

namespace boltzchain {

// Segment k is a stay in states[k] for holding_times[k], ended by a jump.
struct Trajectory {
    std::vector<std::size_t> states;
    std::vector<double> holding_times;
    double total_time = 0.0;

    std::size_t jumps() const noexcept { return states.size(); }
};

// Jump-and-hold simulation: from state i hold Exp(q_i) time (inverse
// transform, -log(u)/q_i with u in (0,1]), then jump by cumulative-sum
// inversion of jump-chain row i. The RNG is std::mt19937_64 seeded with seed.
// Throws BadStart, NotIrreducible, BadSize (n_jumps == 0).
Trajectory simulate(const RateMatrix& m, std::size_t start, std::size_t n_jumps, std::uint64_t seed);

// Fraction of time spent in each state, ignoring the first `burn_in` segments.
// Throws EmptyTrajectory.
Distribution occupation_fractions(const Trajectory& t, std::size_t n, std::size_t burn_in = 0);

// Fraction of segments spent in each state (jump-chain visits), ignoring holding times.
Distribution jump_frequencies(const Trajectory& t, std::size_t n, std::size_t burn_in = 0);

struct ReplicaEstimate {
    Distribution occupation;
    Distribution jump_frequency;
    std::size_t replicas = 0;
};

// Runs `replicas` independent trajectories, replica k seeded with
// derive_seed(seed, k), on up to `threads` worker threads (0 = hardware).
// Per-replica estimates are averaged in replica order, so the result does not
// depend on scheduling.
ReplicaEstimate simulate_replicas(const RateMatrix& m, std::size_t start, std::size_t n_jumps, std::uint64_t seed,
                                  std::size_t replicas, std::size_t threads = 0, std::size_t burn_in = 0);

}  // namespace boltzchain
