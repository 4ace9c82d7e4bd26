#include "boltzchain/generators.hpp"

#include "boltzchain/error.hpp"
#include "boltzchain/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace boltzchain {

namespace {

using Index = Eigen::Index;

void check_state_count(std::size_t n, std::size_t min) {
    if (n < min) {
        throw Error(ErrorCode::BadSize, "need at least " + std::to_string(min) + " states, got " + std::to_string(n));
    }
    if (n > kMaxStates) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " states exceeds the dense limit");
    }
}

template <typename Draw>
RateMatrix fill_random(std::size_t n, std::uint64_t seed, Draw draw) {
    const auto size = static_cast<Index>(n);
    Matrix rates = Matrix::Zero(size, size);
    for (Index i = 0; i < size; ++i) {
        for (Index j = 0; j < size; ++j) {
            if (i != j) {
                const auto edge = static_cast<std::uint64_t>(i) * n + static_cast<std::uint64_t>(j);
                rates(i, j) = draw(unit_from_bits(derive_seed(seed, edge)));
            }
        }
    }
    return build_rate_matrix(rates);
}

}  // namespace

RateMatrix example_chain(ExampleChain which) {
    Matrix q(4, 4);
    if (which == ExampleChain::Q1) {
        q << 0, 2, 1, 1,
             2, 0, 4, 2,
             4, 4, 0, 8,
             16, 8, 8, 0;
    } else {
        q << 0, 2, 3, 1,
             3, 0, 2, 1,
             3, 1, 0, 2,
             1, 3, 2, 0;
    }
    return build_rate_matrix(q);
}

JumpChain cyclic_doubly_stochastic(std::size_t n) {
    check_state_count(n, 3);
    // a[k] for offsets k = 1..n-1; a[0] is the zero diagonal.
    std::vector<double> a(n, 0.0);
    for (std::size_t k = 1; k + 2 <= n; ++k) {
        a[k] = std::ldexp(1.0, -static_cast<int>(k));
    }
    a[n - 1] = std::ldexp(1.0, -static_cast<int>(n - 2));

    const auto size = static_cast<Index>(n);
    Matrix p(size, size);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            p(static_cast<Index>(i), static_cast<Index>(j)) = a[(j + n - i) % n];
        }
    }
    return build_jump_chain(p);
}

std::vector<double> exit_rates_for(const ExitRatePreset& preset, std::size_t n) {
    if (const auto* geo = std::get_if<GeometricExitRates>(&preset)) {
        if (!(geo->base > 0.0) || !std::isfinite(geo->base)) {
            throw Error(ErrorCode::NonpositiveExitRate, "geometric base must be positive");
        }
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = std::pow(geo->base, static_cast<double>(i));
        }
        return q;
    }
    const auto& values = std::get<ExplicitExitRates>(preset).values;
    if (values.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(n) + " exit rates, got " + std::to_string(values.size()));
    }
    return values;
}

RateMatrix prop5_chain(std::size_t n, std::span<const double> exit_rates, bool require_nonconstant) {
    const JumpChain p = cyclic_doubly_stochastic(n);
    if (exit_rates.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(n) + " exit rates, got " + std::to_string(exit_rates.size()));
    }
    if (require_nonconstant &&
        std::all_of(exit_rates.begin(), exit_rates.end(), [&](double v) { return v == exit_rates.front(); })) {
        throw Error(ErrorCode::ConstantExitRates, "exit rates must not all be equal");
    }
    return lift_jump_chain(p, exit_rates);
}

RateMatrix prop5_chain(std::size_t n, const ExitRatePreset& preset, bool require_nonconstant) {
    const auto q = exit_rates_for(preset, n);
    return prop5_chain(n, std::span<const double>(q), require_nonconstant);
}

RateMatrix random_iid_chain(std::size_t n, double low, double high, std::uint64_t seed) {
    check_state_count(n, 2);
    if (!std::isfinite(low) || !std::isfinite(high) || !(low > 0.0) || high < low) {
        throw Error(ErrorCode::BadBounds, "need 0 < low <= high, both finite");
    }
    return fill_random(n, seed, [=](double u) { return low + (high - low) * u; });
}

RateMatrix random_heavy_tail_chain(std::size_t n, double width, std::uint64_t seed) {
    check_state_count(n, 2);
    if (!std::isfinite(width) || !(width > 0.0) || width > 100.0) {
        throw Error(ErrorCode::BadBounds, "width must lie in (0, 100]");
    }
    return fill_random(n, seed, [=](double u) { return std::pow(10.0, -width + 2.0 * width * u); });
}

}  // namespace boltzchain
