#include "boltzchain/boltzmann.hpp"

#include "boltzchain/error.hpp"

#include <algorithm>
#include <cmath>

namespace boltzchain {

namespace {

using Index = Eigen::Index;

double mean(const Vector& v) { return v.mean(); }

double covariance(const Vector& a, const Vector& b) {
    const double ma = mean(a);
    const double mb = mean(b);
    return ((a.array() - ma) * (b.array() - mb)).mean();
}

double variance(const Vector& a) { return covariance(a, a); }

double correlation(const Vector& a, const Vector& b) {
    return std::clamp(covariance(a, b) / std::sqrt(variance(a) * variance(b)), -1.0, 1.0);
}

double log_sum_exp(const Vector& v) {
    const double top = v.maxCoeff();
    return top + std::log((v.array() - top).exp().sum());
}

BoltzmannReport analyze(const RateMatrix& m) {
    BoltzmannReport rep;
    rep.pi = stationary_ctmc(m);
    rep.psi = stationary_dtmc(jump_chain(m));

    const Vector log_q = m.exit_rates().array().log();
    const Vector x = -log_q;
    const Vector log_pi = rep.pi.array().log();
    const Vector log_psi = rep.psi.array().log();

    if (is_effectively_constant(x)) {
        throw Error(ErrorCode::DegenerateExitRates, "exit rates are constant, so the correlation is undefined");
    }
    if (is_effectively_constant(log_pi)) {
        throw Error(ErrorCode::DegeneratePi, "stationary distribution is constant, so the correlation is undefined");
    }

    const auto n = static_cast<double>(m.size());
    rep.var_log_q = variance(x);
    rep.var_log_pi = variance(log_pi);
    rep.var_log_psi = variance(log_psi);
    rep.rho = correlation(x, log_pi);
    rep.psi_constant = is_effectively_constant(log_psi);
    rep.rho_tilde = rep.psi_constant ? 0.0 : correlation(x, log_psi);
    rep.r2 = rep.var_log_psi / rep.var_log_q;

    rep.m_star = covariance(x, log_pi) / rep.var_log_q;
    rep.b_star = rep.m_star * mean(x) - mean(log_pi);
    const Vector fit_residual = log_pi.array() - (rep.m_star * x.array() - rep.b_star);
    rep.error_E = fit_residual.squaredNorm() / n;

    rep.exponent = 1.0 + rep.rho_tilde * std::sqrt(rep.r2);
    rep.k_bound = std::exp(4.0 * std::sqrt(n * rep.error_E));
    rep.pairwise_bound = std::exp(2.0 * std::sqrt(n * rep.error_E));

    // nu_i = exp(exponent * x_i - log Z); log(pi_i / nu_i) = log_pi_i - exponent * x_i + log Z.
    const Vector scaled = rep.exponent * x;
    const double log_z = log_sum_exp(scaled);
    const Vector log_ratio = log_pi - scaled + Vector::Constant(x.size(), log_z);
    rep.k_observed = std::exp(log_ratio.cwiseAbs().maxCoeff());
    rep.pairwise_ratio_max = std::exp(log_ratio.maxCoeff() - log_ratio.minCoeff());

    rep.boltzmann_table.reserve(m.size());
    for (Index i = 0; i < x.size(); ++i) {
        rep.boltzmann_table.push_back({m.exit_rates()(i), rep.pi(i), std::exp(scaled(i) - log_z), std::exp(log_ratio(i))});
    }
    return rep;
}

}  // namespace

bool is_effectively_constant(const Vector& values) {
    if (values.size() == 0) {
        return true;
    }
    const double sd = std::sqrt(variance(values));
    return sd <= 1e-12 * (1.0 + values.cwiseAbs().maxCoeff());
}

LogDecomposition log_decomposition(const RateMatrix& m) {
    LogDecomposition d;
    const Distribution pi = stationary_ctmc(m);
    const Distribution psi = stationary_dtmc(jump_chain(m));
    d.log_pi = pi.array().log();
    d.neg_log_q = -m.exit_rates().array().log();
    d.log_psi = psi.array().log();
    d.constant = std::log(psi.cwiseQuotient(m.exit_rates()).sum());
    return d;
}

BoltzmannReport correlation_stats(const RateMatrix& m) { return analyze(m); }

double theorem1_rho(double rho_tilde, double r) {
    if (!std::isfinite(rho_tilde) || !std::isfinite(r) || rho_tilde < -1.0 || rho_tilde > 1.0 || r < 0.0) {
        throw Error(ErrorCode::OutOfDomain, "need rho_tilde in [-1,1] and r >= 0");
    }
    const double denom = 1.0 + 2.0 * rho_tilde * r + r * r;
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::UndefinedAtPole, "rho is undefined at rho_tilde = -1, r = 1");
    }
    return (1.0 + rho_tilde * r) / std::sqrt(denom);
}

double rho_lower_bound(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::OutOfDomain, "the lower bound needs 0 <= r < 1");
    }
    return (1.0 - r) / (1.0 + r);
}

LeastSquaresFit least_squares_fit(const RateMatrix& m) {
    const BoltzmannReport rep = analyze(m);
    return {rep.m_star, rep.b_star, rep.error_E};
}

KBoltzmannCertificate k_boltzmann_certificate(const RateMatrix& m) {
    const BoltzmannReport rep = analyze(m);
    KBoltzmannCertificate cert;
    cert.k_bound = rep.k_bound;
    cert.k_observed = rep.k_observed;
    cert.boltzmann_table.reserve(rep.boltzmann_table.size());
    for (const auto& row : rep.boltzmann_table) {
        cert.boltzmann_table.push_back(row.ratio);
    }
    cert.bound_ok = rep.k_observed <= rep.k_bound * (1.0 + kBoundSlack);
    cert.pairwise_bound_ok = rep.pairwise_ratio_max <= rep.pairwise_bound * (1.0 + kBoundSlack);
    return cert;
}

RhoGrid rho_grid(std::vector<double> r2_values, std::vector<double> rho_tilde_values) {
    RhoGrid grid;
    grid.r2_values = std::move(r2_values);
    grid.rho_tilde_values = std::move(rho_tilde_values);
    grid.values.reserve(grid.r2_values.size() * grid.rho_tilde_values.size());
    for (const double r2 : grid.r2_values) {
        for (const double rt : grid.rho_tilde_values) {
            try {
                grid.values.emplace_back(theorem1_rho(rt, r2 >= 0.0 ? std::sqrt(r2) : -1.0));
            } catch (const Error&) {
                grid.values.emplace_back(std::nullopt);
            }
        }
    }
    return grid;
}

}  // namespace boltzchain
