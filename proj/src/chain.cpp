#include "boltzchain/chain.hpp"

#include "boltzchain/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace boltzchain {

namespace {

using Index = Eigen::Index;

constexpr double kRowSumTolerance = 1e-9;

void check_shape(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() < 2) {
        throw Error(ErrorCode::BadSize, "a chain needs at least 2 states");
    }
    if (static_cast<std::size_t>(m.rows()) > kMaxStates) {
        throw Error(ErrorCode::TooLarge, std::to_string(m.rows()) + " states exceeds the dense limit of " +
                                             std::to_string(kMaxStates));
    }
}

std::string entry_name(Index i, Index j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// Iterative Tarjan so that n = kMaxStates cannot exhaust the call stack.
class Tarjan {
public:
    explicit Tarjan(const Matrix& w)
        : w_(w), n_(w.rows()), index_(static_cast<std::size_t>(n_), -1), low_(static_cast<std::size_t>(n_), 0),
          on_stack_(static_cast<std::size_t>(n_), false) {}

    std::vector<std::vector<std::size_t>> run() {
        for (Index v = 0; v < n_; ++v) {
            if (index_[static_cast<std::size_t>(v)] < 0) {
                visit(v);
            }
        }
        return std::move(components_);
    }

private:
    struct Frame {
        Index v;
        Index next;
    };

    void visit(Index root) {
        std::vector<Frame> call{{root, 0}};
        open(root);
        while (!call.empty()) {
            Frame& f = call.back();
            const auto v = static_cast<std::size_t>(f.v);
            if (f.next < n_) {
                const Index u = f.next++;
                if (u == f.v || !(w_(f.v, u) > 0.0)) {
                    continue;
                }
                const auto ui = static_cast<std::size_t>(u);
                if (index_[ui] < 0) {
                    open(u);
                    call.push_back({u, 0});
                } else if (on_stack_[ui]) {
                    low_[v] = std::min(low_[v], index_[ui]);
                }
                continue;
            }
            if (low_[v] == index_[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack_.back();
                    stack_.pop_back();
                    on_stack_[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components_.push_back(std::move(comp));
            }
            const long low_v = low_[v];
            call.pop_back();
            if (!call.empty()) {
                auto& parent = low_[static_cast<std::size_t>(call.back().v)];
                parent = std::min(parent, low_v);
            }
        }
    }

    void open(Index v) {
        const auto vi = static_cast<std::size_t>(v);
        index_[vi] = low_[vi] = counter_++;
        stack_.push_back(vi);
        on_stack_[vi] = true;
    }

    const Matrix& w_;
    Index n_;
    long counter_ = 0;
    std::vector<long> index_;
    std::vector<long> low_;
    std::vector<bool> on_stack_;
    std::vector<std::size_t> stack_;
    std::vector<std::vector<std::size_t>> components_;
};

}  // namespace

RateMatrix::RateMatrix(Matrix rates, Vector exit_rates, bool irreducible)
    : rates_(std::move(rates)), exit_rates_(std::move(exit_rates)), irreducible_(irreducible) {}

Matrix RateMatrix::generator() const {
    Matrix g = rates_;
    g.diagonal() = -exit_rates_;
    return g;
}

JumpChain::JumpChain(Matrix probs, bool irreducible) : probs_(std::move(probs)), irreducible_(irreducible) {}

SccResult strongly_connected_components(const Matrix& weights) {
    if (weights.rows() != weights.cols()) {
        throw Error(ErrorCode::NonSquare, "adjacency matrix must be square");
    }
    SccResult result;
    result.components = Tarjan(weights).run();
    result.irreducible = result.components.size() == 1;
    return result;
}

SccResult check_irreducible(const RateMatrix& m) { return strongly_connected_components(m.rates()); }

SccResult check_irreducible(const JumpChain& p) { return strongly_connected_components(p.probs()); }

RateMatrix build_rate_matrix(const Matrix& off_diagonal_rates, bool require_irreducible) {
    check_shape(off_diagonal_rates);
    Matrix rates = off_diagonal_rates;
    const Index n = rates.rows();
    for (Index i = 0; i < n; ++i) {
        rates(i, i) = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double v = rates(i, j);
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::NonFinite, "rate " + entry_name(i, j) + " is not finite");
            }
            if (v < 0.0) {
                throw Error(ErrorCode::NegativeRate, "rate " + entry_name(i, j) + " is negative");
            }
        }
    }
    Vector exit_rates = rates.rowwise().sum();
    for (Index i = 0; i < n; ++i) {
        if (!(exit_rates(i) > 0.0)) {
            throw Error(ErrorCode::AbsorbingState, "state " + std::to_string(i + 1) + " has no outgoing rate");
        }
        if (!std::isfinite(exit_rates(i))) {
            throw Error(ErrorCode::NonFinite, "exit rate of state " + std::to_string(i + 1) + " overflows");
        }
    }
    const bool irreducible = strongly_connected_components(rates).irreducible;
    if (require_irreducible && !irreducible) {
        throw Error(ErrorCode::NotIrreducible, "positive-rate graph is not strongly connected");
    }
    return RateMatrix(std::move(rates), std::move(exit_rates), irreducible);
}

JumpChain build_jump_chain(const Matrix& probs, bool require_irreducible) {
    check_shape(probs);
    const Index n = probs.rows();
    for (Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double v = probs(i, j);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw Error(ErrorCode::NotStochastic, "entry " + entry_name(i, j) + " is not a probability");
            }
            if (i == j && v != 0.0) {
                throw Error(ErrorCode::NotStochastic, "diagonal entry " + entry_name(i, j) + " must be zero");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw Error(ErrorCode::NotStochastic, "row " + std::to_string(i + 1) + " sums to " + std::to_string(sum));
        }
    }
    const bool irreducible = strongly_connected_components(probs).irreducible;
    if (require_irreducible && !irreducible) {
        throw Error(ErrorCode::NotIrreducible, "positive-probability graph is not strongly connected");
    }
    return JumpChain(probs, irreducible);
}

JumpChain jump_chain(const RateMatrix& m) {
    Matrix probs = m.rates();
    for (Index i = 0; i < probs.rows(); ++i) {
        const double q = m.exit_rates()(i);
        if (!(q > 0.0)) {
            throw Error(ErrorCode::AbsorbingState, "state " + std::to_string(i + 1) + " has zero exit rate");
        }
        probs.row(i) /= q;
    }
    return build_jump_chain(probs, false);
}

RateMatrix lift_jump_chain(const JumpChain& p, const Vector& exit_rates) {
    if (static_cast<std::size_t>(exit_rates.size()) != p.size()) {
        throw Error(ErrorCode::DimensionMismatch, "exit-rate vector length does not match the chain");
    }
    for (Index i = 0; i < exit_rates.size(); ++i) {
        if (!(exit_rates(i) > 0.0) || !std::isfinite(exit_rates(i))) {
            throw Error(ErrorCode::NonpositiveExitRate, "exit rate of state " + std::to_string(i + 1) + " must be positive");
        }
    }
    Matrix rates = exit_rates.asDiagonal() * p.probs();
    return build_rate_matrix(rates, false);
}

RateMatrix lift_jump_chain(const JumpChain& p, std::span<const double> exit_rates) {
    return lift_jump_chain(p, Vector(Eigen::Map<const Vector>(exit_rates.data(), static_cast<Index>(exit_rates.size()))));
}

}  // namespace boltzchain
