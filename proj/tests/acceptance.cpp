// Acceptance suite. With no arguments every criterion runs; with a number
// only that one does. One PASS/FAIL line per criterion; exit status is the
// number of failures (capped at 1).

#include "boltzchain/boltzmann.hpp"
#include "boltzchain/chain.hpp"
#include "boltzchain/cli/app.hpp"
#include "boltzchain/cli/contour.hpp"
#include "boltzchain/cycles.hpp"
#include "boltzchain/error.hpp"
#include "boltzchain/generators.hpp"
#include "boltzchain/simulator.hpp"
#include "boltzchain/stationary.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace boltzchain;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Ensemble shared by criteria 2 to 5: 1000 chains, n uniform on 3..50,
// alternating iid [1,2] and heavy-tailed width 3.
struct EnsembleMember {
    RateMatrix chain;
    BoltzmannReport report;
};

const std::vector<EnsembleMember>& ensemble() {
    static const std::vector<EnsembleMember> members = [] {
        std::vector<EnsembleMember> out;
        std::mt19937_64 rng(20240611);
        std::uniform_int_distribution<std::size_t> size(3, 50);
        for (int k = 0; k < 1000; ++k) {
            const std::size_t n = size(rng);
            const auto seed = rng();
            auto m = k % 2 == 0 ? random_iid_chain(n, 1.0, 2.0, seed) : random_heavy_tail_chain(n, 3.0, seed);
            auto report = correlation_stats(m);
            out.push_back({std::move(m), std::move(report)});
        }
        return out;
    }();
    return members;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto r = correlation_stats(example_chain(ExampleChain::Q1));
    const Vector expected{{8.0 / 15, 4.0 / 15, 2.0 / 15, 1.0 / 15}};
    o.require((r.pi - expected).cwiseAbs().maxCoeff() <= 1e-10, "Q1 pi");
    o.require(std::abs(r.rho - 1.0) <= 1e-9, fmt("Q1 rho = %.17g", r.rho));
    o.require(std::abs(r.r2) <= 1e-12, fmt("Q1 r2 = %.17g", r.r2));
    o.require(std::abs(r.k_observed - 1.0) <= 1e-9, fmt("Q1 k_observed = %.17g", r.k_observed));

    try {
        correlation_stats(example_chain(ExampleChain::Q2));
        o.require(false, "Q2 analysis did not fail");
    } catch (const Error& e) {
        o.require(e.code() == ErrorCode::DegenerateExitRates, "Q2 error code");
        o.require(cli::exit_code_for(e.code()) == cli::kExitDegenerate, "Q2 exit code");
    }
    const double t = seconds_since(t0);
    o.require(t < 1.0, fmt("runtime %.3f s", t));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto& members = ensemble();
    double worst = 0.0;
    for (const auto& m : members) {
        const auto& r = m.report;
        const auto decomp = log_decomposition(m.chain);
        const double direct = oracle::correlation(decomp.neg_log_q, r.pi.array().log().matrix());
        const double predicted = theorem1_rho(r.rho_tilde, std::sqrt(r.r2));
        worst = std::max(worst, std::abs(direct - predicted));
    }
    o.require(members.size() >= 1000, "ensemble size");
    o.require(worst <= 1e-8, fmt("max |rho - theorem1| = %.3g", worst));
    const double t = seconds_since(t0);
    o.require(t < 60.0, fmt("runtime %.1f s", t));
    if (o.pass) o.detail = fmt("max deviation %.3g over %.0f chains", worst, static_cast<double>(members.size()));
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0.0;
    for (const auto& m : ensemble()) {
        const auto& r = m.report;
        const auto fit = least_squares_fit(m.chain);
        const Vector x = -m.chain.exit_rates().array().log().matrix();
        const Vector lp = r.pi.array().log().matrix();
        const auto ref = oracle::normal_equations(x, lp);
        const double r_val = std::sqrt(r.r2);
        const double slope_closed = 1.0 + r.rho_tilde * r_val;
        const double e_pi = (1.0 - r.rho * r.rho) * r.var_log_pi;
        const double e_q = r.r2 * (1.0 - r.rho_tilde * r.rho_tilde) * r.var_log_q;

        // E is a difference of nearly equal quantities when the fit is almost
        // exact; compare on the scale of Var log pi.
        const double e_scale = std::max(fit.error_E, 1e-8 * r.var_log_pi);
        const double checks[] = {
            rel_diff(fit.m_star, slope_closed),
            rel_diff(fit.m_star, ref.slope),
            rel_diff(fit.b_star, -ref.intercept) * std::abs(fit.b_star) /
                std::max(std::abs(fit.b_star), std::abs(lp.mean())),
            std::abs(fit.error_E - e_pi) / e_scale,
            std::abs(fit.error_E - e_q) / e_scale,
            std::abs(fit.error_E - ref.mse) / e_scale,
        };
        for (double c : checks) worst = std::max(worst, c);
    }
    o.require(worst <= 1e-8, fmt("max relative deviation %.3g", worst));
    if (o.pass) o.detail = fmt("max relative deviation %.3g", worst);
    return o;
}

Outcome criterion4() {
    Outcome o;
    double tightest = 0.0;
    for (const auto& m : ensemble()) {
        const auto& r = m.report;
        const std::size_t n = m.chain.size();
        const double k_bound = std::exp(4.0 * std::sqrt(static_cast<double>(n) * r.error_E));
        const double pair_bound = std::exp(2.0 * std::sqrt(static_cast<double>(n) * r.error_E));
        o.require(r.k_observed <= k_bound * (1.0 + 1e-12), fmt("k_observed %.6g > bound %.6g", r.k_observed, k_bound));
        o.require(r.pairwise_ratio_max <= pair_bound * (1.0 + 1e-12),
                  fmt("pairwise %.6g > bound %.6g", r.pairwise_ratio_max, pair_bound));
        tightest = std::max(tightest, std::log(r.k_observed) / std::log(k_bound));
    }
    if (o.pass) o.detail = fmt("largest log k_observed / log k_bound = %.3g", tightest);
    return o;
}

Outcome criterion5() {
    Outcome o;
    int checked = 0;
    for (const auto& m : ensemble()) {
        const double r = std::sqrt(m.report.r2);
        if (r >= 1.0) continue;
        ++checked;
        const double lb = rho_lower_bound(r);
        o.require(m.report.rho >= lb - 1e-12, fmt("rho %.6g below bound %.6g", m.report.rho, lb));
    }
    if (o.pass) o.detail = fmt("%.0f instances with r < 1", checked);
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto t0 = Clock::now();
    for (std::size_t n = 3; n <= 12; ++n) {
        const auto p = cyclic_doubly_stochastic(n);
        const auto rows = p.probs().rowwise().sum();
        const auto cols = p.probs().colwise().sum();
        o.require((rows.array() - 1.0).abs().maxCoeff() <= 1e-12 && (cols.array() - 1.0).abs().maxCoeff() <= 1e-12,
                  fmt("P_%.0f not doubly stochastic", static_cast<double>(n)));

        const auto m = prop5_chain(n, GeometricExitRates{2.0});
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const double force = cycle_force(m, Cycle(order));
        const double expected = static_cast<double>(n * (n - 3)) * std::log(2.0);
        o.require(std::abs(force - expected) <= 1e-10, fmt("n=%.0f cycle force %.17g", static_cast<double>(n), force));

        const auto psi = stationary_dtmc(jump_chain(m));
        o.require((psi.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff() <= 1e-10, "psi not uniform");

        const auto r = correlation_stats(m);
        o.require(std::abs(r.rho - 1.0) <= 1e-9, fmt("n=%.0f rho = %.17g", static_cast<double>(n), r.rho));
        const Vector inv_q = m.exit_rates().cwiseInverse();
        const Vector boltzmann = inv_q / inv_q.sum();
        o.require((r.pi - boltzmann).cwiseAbs().maxCoeff() <= 1e-10, "pi != q^-1/Z");
    }
    const double t = seconds_since(t0);
    o.require(t < 5.0, fmt("runtime %.3f s", t));
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(707);
    double worst = 0.0;
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = 3 + rng() % 18;
        std::uniform_real_distribution<double> log_rate(-3.0, 3.0);
        Matrix q = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < q.rows(); ++i)
            for (Eigen::Index j = 0; j < q.cols(); ++j)
                if (i != j) q(i, j) = std::pow(10.0, log_rate(rng));
        const auto m = build_rate_matrix(q);
        const auto p = jump_chain(m);
        o.require(microscopically_reversible(m), "chain not microscopically reversible");
        for (int k = 0; k < 100; ++k) {
            std::vector<std::size_t> states(n);
            std::iota(states.begin(), states.end(), std::size_t{0});
            std::shuffle(states.begin(), states.end(), rng);
            states.resize(3 + rng() % (n - 2));
            const Cycle cycle(states);
            const double a = cycle_force(m, cycle);
            const double b = cycle_force(p, cycle);
            worst = std::max(worst, std::abs(a - b));
        }
    }
    o.require(worst <= 1e-12, fmt("max |difference| = %.3g", worst));
    if (o.pass) o.detail = fmt("max |difference| = %.3g", worst);
    return o;
}

Outcome criterion8() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto m = example_chain(ExampleChain::Q1);
    const auto traj = simulate(m, 0, 1000000, 8);
    const auto occ = occupation_fractions(traj, 4);
    const auto freq = jump_frequencies(traj, 4);
    const auto pi = stationary_ctmc(m);
    const auto psi = stationary_dtmc(jump_chain(m));
    const double occ_err = (occ - pi).cwiseAbs().maxCoeff();
    const double freq_err = (freq.array() - 0.25).abs().maxCoeff();
    o.require(occ_err <= 0.01, fmt("occupation error %.4g", occ_err));
    o.require(freq_err <= 0.01, fmt("jump frequency error %.4g", freq_err));
    o.require((psi.array() - 0.25).abs().maxCoeff() <= 1e-12, "psi not uniform");

    // pi_i is proportional to psi_i / q_i: compare the empirical occupation
    // with the normalized empirical jump frequency over exit rate.
    const Vector implied_raw = freq.cwiseQuotient(m.exit_rates());
    const Vector implied = implied_raw / implied_raw.sum();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) worst = std::max(worst, std::abs(occ(i) - implied(i)) / implied(i));
    o.require(worst <= 0.02, fmt("empirical pi vs psi/q relative error %.4g", worst));
    const double t = seconds_since(t0);
    o.require(t < 30.0, fmt("runtime %.2f s", t));
    if (o.pass) o.detail = fmt("occupation error %.2g, frequency error %.2g", occ_err, freq_err);
    return o;
}

Outcome criterion9() {
    Outcome o;
    const auto t0 = Clock::now();
    double k_heavy = 0.0, k_iid = 0.0, rho_heavy = 0.0;
    const int chains = 100;
    for (int k = 0; k < chains; ++k) {
        const auto heavy = correlation_stats(random_heavy_tail_chain(30, 3.0, 9000 + k));
        const auto iid = correlation_stats(random_iid_chain(30, 1.0, 2.0, 9000 + k));
        k_heavy += heavy.k_observed / chains;
        rho_heavy += heavy.rho / chains;
        k_iid += iid.k_observed / chains;
    }
    o.require(k_heavy < k_iid, fmt("mean k heavy %.4g >= mean k iid %.4g", k_heavy, k_iid));
    o.require(rho_heavy > 0.9, fmt("mean rho heavy %.4g <= 0.9", rho_heavy));
    const double t = seconds_since(t0);
    o.require(t < 120.0, fmt("runtime %.1f s", t));
    const std::string summary = fmt("mean k heavy %.4g, iid %.4g", k_heavy, k_iid) + fmt(", mean rho heavy %.4g", rho_heavy);
    o.detail = o.pass ? summary : o.detail + " (" + summary + ")";
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::vector<double> r2s = cli::parse_grid_spec("0:4:41");
    r2s.push_back(1e6);
    const auto rts = cli::parse_grid_spec("-1:1:41");
    const auto grid = rho_grid(r2s, rts);
    for (std::size_t i = 0; i < r2s.size(); ++i) {
        for (std::size_t j = 0; j < rts.size(); ++j) {
            const auto& v = grid.at(i, j);
            const bool pole = r2s[i] == 1.0 && rts[j] == -1.0;
            o.require(v.has_value() != pole, fmt("definedness wrong at (%.6g, %.6g)", r2s[i], rts[j]));
            if (!v) continue;
            if (r2s[i] == 0.0 || rts[j] == 1.0)
                o.require(std::abs(*v - 1.0) <= 1e-12, fmt("rho != 1 at (%.6g, %.6g)", r2s[i], rts[j]));
            if (r2s[i] == 1e6)
                o.require(std::abs(*v - rts[j]) <= 2.0 / std::sqrt(r2s[i]), fmt("|rho - rho_tilde| large at %.6g", rts[j]));
        }
    }
    const auto csv = cli::emit_contour_csv("0:4:41", "-1:1:41");
    o.require(csv.find("\n1,-1,nan\n") != std::string::npos, "CSV missing the undefined point");
    return o;
}

Outcome criterion11() {
    Outcome o;
    auto capture = [](std::vector<std::string> args) {
        args.insert(args.begin(), "boltzchain");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    const std::vector<std::vector<std::string>> generate_runs = {
        {"generate", "iid", "--n", "25", "--low", "1", "--high", "2", "--seed", "11"},
        {"generate", "heavy", "--n", "25", "--width", "3", "--seed", "11"},
        {"generate", "cyclic", "--n", "9", "--exit-rates", "geometric:2"},
    };
    for (const auto& args : generate_runs) {
        const auto a = capture(args);
        o.require(a.rfind("0\n", 0) == 0, "generate failed");
        o.require(a == capture(args), "generate output differs between runs");
    }

    const auto m = random_heavy_tail_chain(10, 2.0, 5);
    const auto t1 = simulate(m, 0, 20000, 99);
    const auto t2 = simulate(m, 0, 20000, 99);
    o.require(t1.states == t2.states && t1.holding_times == t2.holding_times, "simulate trajectories differ");

    const auto r1 = simulate_replicas(m, 0, 20000, 99, 8, 4);
    const auto r2 = simulate_replicas(m, 0, 20000, 99, 8, 1);
    o.require(r1.occupation == r2.occupation && r1.jump_frequency == r2.jump_frequency,
              "replica estimates depend on thread count");
    return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<const char*, std::function<Outcome()>>> all = {
        {"example fixtures Q1/Q2", criterion1},
        {"correlation identity over ensemble", criterion2},
        {"regression slope and error closed forms", criterion3},
        {"k-Boltzmann and pairwise ratio bounds", criterion4},
        {"correlation lower bound for r < 1", criterion5},
        {"cyclic doubly stochastic construction", criterion6},
        {"cycle force rate/jump agreement", criterion7},
        {"Monte Carlo agreement on Q1", criterion8},
        {"heavy-tail ensemble trend", criterion9},
        {"contour grid structure", criterion10},
        {"seeded determinism", criterion11},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t first = 1, last = criteria().size();
    if (argc > 1) {
        first = last = std::stoul(argv[1]);
        if (first < 1 || first > criteria().size()) {
            std::cerr << "criterion must be 1.." << criteria().size() << "\n";
            return 2;
        }
    }
    int failures = 0;
    for (std::size_t c = first; c <= last; ++c) {
        const auto& [name, fn] = criteria()[c - 1];
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %2zu: %s [%.2f s]%s%s\n", o.pass ? "PASS" : "FAIL", c, name, seconds_since(t0),
                    o.detail.empty() ? "" : " - ", o.detail.c_str());
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
