#include "boltzchain/simulator.hpp"

#include "boltzchain/error.hpp"
#include "boltzchain/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace boltzchain {

namespace {

using Index = Eigen::Index;

void check_nonempty(const Trajectory& t, std::size_t burn_in) {
    if (t.states.empty() || burn_in >= t.states.size()) {
        throw Error(ErrorCode::EmptyTrajectory, "no segments left to estimate from");
    }
}

}  // namespace

Trajectory simulate(const RateMatrix& m, std::size_t start, std::size_t n_jumps, std::uint64_t seed) {
    const std::size_t n = m.size();
    if (start >= n) {
        throw Error(ErrorCode::BadStart, "start state " + std::to_string(start + 1) + " is out of range");
    }
    if (n_jumps == 0) {
        throw Error(ErrorCode::BadSize, "need at least one jump");
    }
    if (!m.irreducible()) {
        throw Error(ErrorCode::NotIrreducible, "simulation requires an irreducible chain");
    }

    // Cumulative jump probabilities per row; the last positive entry of each
    // row is pinned to 1 so rounding can never step past it.
    const JumpChain p = jump_chain(m);
    Matrix cumulative = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
    std::vector<std::size_t> last_positive(n, 0);
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
        double acc = 0.0;
        for (Index j = 0; j < static_cast<Index>(n); ++j) {
            acc += p.probs()(i, j);
            cumulative(i, j) = acc;
            if (p.probs()(i, j) > 0.0) {
                last_positive[static_cast<std::size_t>(i)] = static_cast<std::size_t>(j);
            }
        }
        cumulative(i, static_cast<Index>(last_positive[static_cast<std::size_t>(i)])) = 1.0;
    }

    Rng rng(seed);
    Trajectory t;
    t.states.reserve(n_jumps);
    t.holding_times.reserve(n_jumps);
    std::size_t state = start;
    for (std::size_t k = 0; k < n_jumps; ++k) {
        const double hold = -std::log(rng.uniform_positive()) / m.exit_rate(state);
        t.states.push_back(state);
        t.holding_times.push_back(hold);
        t.total_time += hold;

        const double v = rng.uniform();
        const auto row = static_cast<Index>(state);
        std::size_t next = last_positive[state];
        for (std::size_t j = 0; j < next; ++j) {
            if (v < cumulative(row, static_cast<Index>(j)) && p.probs()(row, static_cast<Index>(j)) > 0.0) {
                next = j;
                break;
            }
        }
        state = next;
    }
    return t;
}

Distribution occupation_fractions(const Trajectory& t, std::size_t n, std::size_t burn_in) {
    check_nonempty(t, burn_in);
    Distribution d = Distribution::Zero(static_cast<Index>(n));
    double total = 0.0;
    for (std::size_t k = burn_in; k < t.states.size(); ++k) {
        if (t.states[k] >= n) {
            throw Error(ErrorCode::DimensionMismatch, "trajectory visits a state outside the chain");
        }
        d(static_cast<Index>(t.states[k])) += t.holding_times[k];
        total += t.holding_times[k];
    }
    return d / total;
}

Distribution jump_frequencies(const Trajectory& t, std::size_t n, std::size_t burn_in) {
    check_nonempty(t, burn_in);
    Distribution d = Distribution::Zero(static_cast<Index>(n));
    for (std::size_t k = burn_in; k < t.states.size(); ++k) {
        if (t.states[k] >= n) {
            throw Error(ErrorCode::DimensionMismatch, "trajectory visits a state outside the chain");
        }
        d(static_cast<Index>(t.states[k])) += 1.0;
    }
    return d / static_cast<double>(t.states.size() - burn_in);
}

ReplicaEstimate simulate_replicas(const RateMatrix& m, std::size_t start, std::size_t n_jumps, std::uint64_t seed,
                                  std::size_t replicas, std::size_t threads, std::size_t burn_in) {
    if (replicas == 0) {
        throw Error(ErrorCode::BadSize, "need at least one replica");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, replicas);

    const std::size_t n = m.size();
    std::vector<Distribution> occupation(replicas);
    std::vector<Distribution> frequency(replicas);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (std::size_t k = next++; k < replicas && !failed; k = next++) {
            try {
                const Trajectory t = simulate(m, start, n_jumps, derive_seed(seed, k));
                occupation[k] = occupation_fractions(t, n, burn_in);
                frequency[k] = jump_frequencies(t, n, burn_in);
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < threads; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ReplicaEstimate est;
    est.replicas = replicas;
    est.occupation = Distribution::Zero(static_cast<Index>(n));
    est.jump_frequency = Distribution::Zero(static_cast<Index>(n));
    for (std::size_t k = 0; k < replicas; ++k) {
        est.occupation += occupation[k];
        est.jump_frequency += frequency[k];
    }
    est.occupation /= static_cast<double>(replicas);
    est.jump_frequency /= static_cast<double>(replicas);
    return est;
}

}  // namespace boltzchain
