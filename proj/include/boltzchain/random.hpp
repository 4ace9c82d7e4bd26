#pragma once

#include <cstdint>
#include <random>

namespace boltzchain {

// Seeding rules (fixed; outputs are reproducible across platforms):
//   * splitmix64 is Vigna's SplitMix64 output function.
//   * derive_seed(seed, k) = splitmix64(splitmix64(seed) ^ k) names stream k of
//     a seed. Generators use k = i * n + j for the directed edge i -> j; the
//     simulator uses k = replica index.
//   * Sequential draws come from std::mt19937_64, whose output sequence is
//     fixed by the standard. Doubles take the top 53 bits of one 64-bit word.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// [0, 1)
inline double unit_from_bits(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// (0, 1]
inline double positive_unit_from_bits(std::uint64_t bits) noexcept {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return unit_from_bits(engine_()); }
    double uniform_positive() { return positive_unit_from_bits(engine_()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace boltzchain
