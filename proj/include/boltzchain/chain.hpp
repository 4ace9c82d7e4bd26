#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace boltzchain {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr std::size_t kMaxStates = 4096;

struct SccResult {
    bool irreducible = false;
    // Components in discovery order; each list holds 0-based state indices in ascending order.
    std::vector<std::vector<std::size_t>> components;
};

// Off-diagonal rates q_ij of a continuous-time chain. The generator diagonal
// -q_i is implied and never stored; storage keeps zeros there.
class RateMatrix {
public:
    std::size_t size() const noexcept { return static_cast<std::size_t>(rates_.rows()); }
    const Matrix& rates() const noexcept { return rates_; }
    double rate(std::size_t i, std::size_t j) const { return rates_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    const Vector& exit_rates() const noexcept { return exit_rates_; }
    double exit_rate(std::size_t i) const { return exit_rates_(static_cast<Eigen::Index>(i)); }
    double max_rate() const noexcept { return rates_.maxCoeff(); }
    bool irreducible() const noexcept { return irreducible_; }

    // Full generator with -q_i on the diagonal.
    Matrix generator() const;

private:
    friend RateMatrix build_rate_matrix(const Matrix&, bool);
    RateMatrix(Matrix rates, Vector exit_rates, bool irreducible);

    Matrix rates_;
    Vector exit_rates_;
    bool irreducible_;
};

// Embedded discrete-time chain p_ij = q_ij / q_i; zero diagonal, rows sum to one.
class JumpChain {
public:
    std::size_t size() const noexcept { return static_cast<std::size_t>(probs_.rows()); }
    const Matrix& probs() const noexcept { return probs_; }
    double prob(std::size_t i, std::size_t j) const { return probs_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    bool irreducible() const noexcept { return irreducible_; }

private:
    friend JumpChain build_jump_chain(const Matrix&, bool);
    JumpChain(Matrix probs, bool irreducible);

    Matrix probs_;
    bool irreducible_;
};

// Validates and wraps off-diagonal rates; the input diagonal is ignored.
// Throws NonSquare, TooLarge, NegativeRate, NonFinite, AbsorbingState and,
// when require_irreducible is set, NotIrreducible.
RateMatrix build_rate_matrix(const Matrix& off_diagonal_rates, bool require_irreducible = true);

// Validates a transition matrix: entries in [0,1], zero diagonal, rows summing
// to one within 1e-9. Throws NotStochastic or NotIrreducible.
JumpChain build_jump_chain(const Matrix& probs, bool require_irreducible = true);

// Tarjan SCC decomposition of the digraph with an edge i->j iff weights(i,j) > 0 (i != j).
SccResult strongly_connected_components(const Matrix& weights);
SccResult check_irreducible(const RateMatrix& m);
SccResult check_irreducible(const JumpChain& p);

JumpChain jump_chain(const RateMatrix& m);

// rates_ij = probs_ij * exit_rates_i. Throws NonpositiveExitRate, DimensionMismatch.
RateMatrix lift_jump_chain(const JumpChain& p, std::span<const double> exit_rates);
RateMatrix lift_jump_chain(const JumpChain& p, const Vector& exit_rates);

}  // namespace boltzchain
