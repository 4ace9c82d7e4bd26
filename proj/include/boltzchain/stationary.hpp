#pragma once

#include "boltzchain/chain.hpp"

namespace boltzchain {

// Probability vector over states (pi, psi, or an empirical estimate).
using Distribution = Vector;

// Solves pi Q = 0, sum(pi) = 1 by dense LU on the transposed generator with the
// last equation replaced by the normalisation row. Columns are scaled by their
// max-abs entry first, so the unknowns are effectively pi_i q_i.
// Throws NotIrreducible or SolveFailure.
Distribution stationary_ctmc(const RateMatrix& m);

// Solves psi P = psi, sum(psi) = 1 the same way.
Distribution stationary_dtmc(const JumpChain& p);

// pi_i = (psi_i / q_i) / sum_k psi_k / q_k with psi from the jump chain.
Distribution stationary_via_jump(const RateMatrix& m);

// max_j |sum_i d_i Q_ij| using the implied diagonal -q_j. Throws DimensionMismatch.
double residual(const Distribution& d, const RateMatrix& m);

}  // namespace boltzchain
