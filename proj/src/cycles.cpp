#include "boltzchain/cycles.hpp"

#include "boltzchain/error.hpp"
#include "boltzchain/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace boltzchain {

namespace {

double force(const Matrix& w, const Cycle& c) {
    const auto& s = c.states();
    for (const auto i : s) {
        if (i >= static_cast<std::size_t>(w.rows())) {
            throw Error(ErrorCode::BadCycle, "state " + std::to_string(i + 1) + " is out of range");
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto a = static_cast<Eigen::Index>(s[k]);
        const auto b = static_cast<Eigen::Index>(s[(k + 1) % s.size()]);
        const double fwd = w(a, b);
        const double rev = w(b, a);
        if (!(fwd > 0.0) || !(rev > 0.0)) {
            throw Error(ErrorCode::MissingEdge, "edge between states " + std::to_string(a + 1) + " and " +
                                                    std::to_string(b + 1) + " is not present in both directions");
        }
        total += std::log(fwd) - std::log(rev);
    }
    return total;
}

}  // namespace

Cycle::Cycle(std::vector<std::size_t> states) : states_(std::move(states)) {
    if (states_.size() < 3) {
        throw Error(ErrorCode::BadCycle, "a cycle needs at least 3 states");
    }
    auto sorted = states_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::BadCycle, "cycle states must be distinct");
    }
}

Cycle Cycle::reversed() const {
    return Cycle(std::vector<std::size_t>(states_.rbegin(), states_.rend()));
}

Cycle Cycle::rotated(std::size_t shift) const {
    auto s = states_;
    std::rotate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(shift % s.size()), s.end());
    return Cycle(std::move(s));
}

double cycle_force(const RateMatrix& m, const Cycle& c) { return force(m.rates(), c); }

double cycle_force(const JumpChain& p, const Cycle& c) { return force(p.probs(), c); }

bool microscopically_reversible(const RateMatrix& m) {
    const auto& q = m.rates();
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < q.cols(); ++j) {
            if ((q(i, j) > 0.0) != (q(j, i) > 0.0)) {
                return false;
            }
        }
    }
    return true;
}

bool is_detailed_balanced(const RateMatrix& m, double tol) {
    const Distribution pi = stationary_ctmc(m);
    const Matrix flux = pi.asDiagonal() * m.rates();
    const double worst = (flux - flux.transpose()).cwiseAbs().maxCoeff();
    return worst <= tol * m.max_rate();
}

}  // namespace boltzchain
