#pragma once

#include "boltzchain/chain.hpp"
#include "boltzchain/stationary.hpp"

#include <optional>
#include <vector>

namespace boltzchain {

// Natural-log pieces of pi_i = (psi_i / q_i) / sum_k psi_k / q_k:
//   log_pi = neg_log_q + log_psi - constant.
struct LogDecomposition {
    Vector log_pi;
    Vector neg_log_q;
    Vector log_psi;
    double constant = 0.0;
};

struct BoltzmannRow {
    double exit_rate = 0.0;
    double pi = 0.0;
    double nu = 0.0;     // q_i^{-(1 + rho_tilde r)} / Z
    double ratio = 0.0;  // pi_i / nu_i
};

// All moments are population moments over a uniformly random state.
struct BoltzmannReport {
    double rho = 0.0;
    double rho_tilde = 0.0;  // 0 when psi is constant
    double r2 = 0.0;
    double m_star = 0.0;     // regression slope of log pi on -log q
    double b_star = 0.0;     // fit is log pi ~ -m_star log q - b_star
    double error_E = 0.0;    // least squared error of that fit
    double var_log_q = 0.0;
    double var_log_pi = 0.0;
    double var_log_psi = 0.0;
    double exponent = 1.0;   // 1 + rho_tilde r, the exponent used for nu
    double k_bound = 1.0;    // exp(4 sqrt(n E))
    double k_observed = 1.0;
    double pairwise_ratio_max = 1.0;  // max_{i,j} (pi_i/pi_j)(nu_j/nu_i)
    double pairwise_bound = 1.0;      // exp(2 sqrt(n E))
    bool psi_constant = false;
    Distribution pi;
    Distribution psi;
    std::vector<BoltzmannRow> boltzmann_table;
};

struct LeastSquaresFit {
    double m_star = 0.0;
    double b_star = 0.0;
    double error_E = 0.0;
};

struct KBoltzmannCertificate {
    double k_bound = 1.0;
    double k_observed = 1.0;
    std::vector<double> boltzmann_table;
    bool bound_ok = false;
    bool pairwise_bound_ok = false;
};

// Relative slack applied when comparing observed quantities against the
// theoretical bounds, covering floating-point rounding only.
inline constexpr double kBoundSlack = 1e-12;

// A vector counts as constant when its population standard deviation is at
// most 1e-12 * (1 + max |value|).
bool is_effectively_constant(const Vector& values);

LogDecomposition log_decomposition(const RateMatrix& m);

// Throws DegenerateExitRates when log q is constant, DegeneratePi when log pi is.
BoltzmannReport correlation_stats(const RateMatrix& m);

// (1 + rho_tilde r) / sqrt(1 + 2 rho_tilde r + r^2). Throws UndefinedAtPole at
// (rho_tilde, r) = (-1, 1) and OutOfDomain outside [-1,1] x [0, inf).
double theorem1_rho(double rho_tilde, double r);

// (1 - r) / (1 + r), valid for 0 <= r < 1; throws OutOfDomain otherwise.
double rho_lower_bound(double r);

LeastSquaresFit least_squares_fit(const RateMatrix& m);

KBoltzmannCertificate k_boltzmann_certificate(const RateMatrix& m);

struct RhoGrid {
    std::vector<double> r2_values;
    std::vector<double> rho_tilde_values;
    // Row-major with r2 outer; nullopt marks the pole.
    std::vector<std::optional<double>> values;

    const std::optional<double>& at(std::size_t r2_index, std::size_t rho_tilde_index) const {
        return values[r2_index * rho_tilde_values.size() + rho_tilde_index];
    }
};

RhoGrid rho_grid(std::vector<double> r2_values, std::vector<double> rho_tilde_values);

}  // namespace boltzchain
