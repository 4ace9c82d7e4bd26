#include "boltzchain/stationary.hpp"

#include "boltzchain/error.hpp"

#include <cmath>
#include <string>

namespace boltzchain {

namespace {

using Index = Eigen::Index;

// Solves x^T A = 0 with sum(x) = 1, where A has zero row sums. The system is
// A^T x = 0 with its last equation swapped for the normalisation constraint.
Distribution solve_null_vector(const Matrix& a) {
    const Index n = a.rows();
    Matrix system = a.transpose();
    system.row(n - 1).setOnes();
    Vector rhs = Vector::Zero(n);
    rhs(n - 1) = 1.0;

    Vector scale = system.cwiseAbs().colwise().maxCoeff().transpose();
    for (Index j = 0; j < n; ++j) {
        if (!(scale(j) > 0.0)) {
            throw Error(ErrorCode::SolveFailure, "column " + std::to_string(j + 1) + " of the system is zero");
        }
    }
    system = system * scale.cwiseInverse().asDiagonal();

    Eigen::PartialPivLU<Matrix> lu(system);
    Vector y = lu.solve(rhs);
    // One step of iterative refinement; cheap at these sizes.
    y += lu.solve(rhs - system * y);

    Distribution x = y.cwiseQuotient(scale);
    const double total = x.sum();
    if (!std::isfinite(total) || !(total > 0.0)) {
        throw Error(ErrorCode::SolveFailure, "linear solve did not produce a finite distribution");
    }
    x /= total;
    for (Index i = 0; i < n; ++i) {
        if (!(x(i) > 0.0)) {
            throw Error(ErrorCode::SolveFailure, "stationary entry " + std::to_string(i + 1) + " is not positive");
        }
    }
    return x;
}

}  // namespace

Distribution stationary_ctmc(const RateMatrix& m) {
    if (!m.irreducible()) {
        throw Error(ErrorCode::NotIrreducible, "stationary distribution requires an irreducible chain");
    }
    return solve_null_vector(m.generator());
}

Distribution stationary_dtmc(const JumpChain& p) {
    if (!p.irreducible()) {
        throw Error(ErrorCode::NotIrreducible, "stationary distribution requires an irreducible chain");
    }
    Matrix a = p.probs();
    a.diagonal().array() -= 1.0;
    return solve_null_vector(a);
}

Distribution stationary_via_jump(const RateMatrix& m) {
    if (!m.irreducible()) {
        throw Error(ErrorCode::NotIrreducible, "stationary distribution requires an irreducible chain");
    }
    const Distribution psi = stationary_dtmc(jump_chain(m));
    Distribution pi = psi.cwiseQuotient(m.exit_rates());
    return pi / pi.sum();
}

double residual(const Distribution& d, const RateMatrix& m) {
    if (static_cast<std::size_t>(d.size()) != m.size()) {
        throw Error(ErrorCode::DimensionMismatch, "distribution has " + std::to_string(d.size()) + " entries, chain has " +
                                                      std::to_string(m.size()) + " states");
    }
    const Vector flow = m.rates().transpose() * d - d.cwiseProduct(m.exit_rates());
    return flow.cwiseAbs().maxCoeff();
}

}  // namespace boltzchain
