#include "boltzchain/cli/app.hpp"

#include "boltzchain/boltzmann.hpp"
#include "boltzchain/cli/chain_file.hpp"
#include "boltzchain/cli/contour.hpp"
#include "boltzchain/cli/report.hpp"
#include "boltzchain/cycles.hpp"
#include "boltzchain/generators.hpp"
#include "boltzchain/simulator.hpp"
#include "boltzchain/stationary.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace boltzchain::cli {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::SyntaxError, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RateMatrix require_ctmc(const Chain& chain, std::string_view command) {
    if (const auto* m = std::get_if<RateMatrix>(&chain)) {
        return *m;
    }
    throw Error(ErrorCode::SyntaxError, std::string(command) + " needs a ctmc file");
}

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find(',', pos), text.size());
        auto item = text.substr(pos, end - pos);
        if (!item.empty() && item.front() == '+') item.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
            throw Error(ErrorCode::SyntaxError, "bad number '" + std::string(item) + "' in list");
        }
        values.push_back(v);
        pos = end + 1;
    }
    return values;
}

ExitRatePreset parse_exit_rates(const std::string& spec) {
    if (spec.rfind("geometric:", 0) == 0) {
        const auto values = parse_number_list(std::string_view(spec).substr(10));
        if (values.size() != 1) {
            throw Error(ErrorCode::SyntaxError, "geometric:BASE takes one number");
        }
        return GeometricExitRates{values.front()};
    }
    if (spec.rfind("list:", 0) == 0) {
        return ExplicitExitRates{parse_number_list(std::string_view(spec).substr(5))};
    }
    throw Error(ErrorCode::SyntaxError, "--exit-rates must be geometric:BASE or list:v1,v2,...");
}

Cycle parse_cycle(const std::string& spec, std::size_t n) {
    std::vector<std::size_t> states;
    for (const double v : parse_number_list(spec)) {
        if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(n)) {
            throw Error(ErrorCode::BadCycle, "cycle states must be integers in 1.." + std::to_string(n));
        }
        states.push_back(static_cast<std::size_t>(v) - 1);
    }
    return Cycle(std::move(states));
}

struct Options {
    std::string file;
    std::string format = "text";

    std::string family;
    std::size_t n = 0;
    double low = 1.0;
    double high = 2.0;
    double width = 3.0;
    std::uint64_t seed = 0;
    std::string exit_rates;

    std::size_t jumps = 0;
    std::size_t start = 1;
    std::size_t replicas = 1;
    std::size_t threads = 0;
    std::size_t burn_in = 0;

    std::string cycle;

    std::string r2_spec;
    std::string rho_tilde_spec;
};

void cmd_analyze(const Options& o, std::ostream& out) {
    const RateMatrix m = require_ctmc(parse_chain_file(read_input(o.file)), "analyze");
    const ReportFormat format = parse_report_format(o.format);
    out << write_report(correlation_stats(m), format);
}

void cmd_generate(const Options& o, std::ostream& out, const CLI::App& sub) {
    const auto need = [&](const char* flag) {
        if (sub.count(flag) == 0) {
            throw Error(ErrorCode::SyntaxError, "generate " + o.family + " requires " + flag);
        }
    };
    if (o.family == "example-q1") {
        out << write_chain_file(example_chain(ExampleChain::Q1), "example chain Q1");
    } else if (o.family == "example-q2") {
        out << write_chain_file(example_chain(ExampleChain::Q2), "example chain Q2");
    } else if (o.family == "cyclic") {
        need("--n");
        if (o.exit_rates.empty()) {
            out << write_chain_file(cyclic_doubly_stochastic(o.n), "cyclic doubly stochastic n=" + std::to_string(o.n));
        } else {
            out << write_chain_file(prop5_chain(o.n, parse_exit_rates(o.exit_rates), false),
                                    "cyclic lifted n=" + std::to_string(o.n) + " exit-rates=" + o.exit_rates);
        }
    } else if (o.family == "iid") {
        need("--n");
        need("--low");
        need("--high");
        out << write_chain_file(random_iid_chain(o.n, o.low, o.high, o.seed),
                                "iid n=" + std::to_string(o.n) + " low=" + format_number(o.low) +
                                    " high=" + format_number(o.high) + " seed=" + std::to_string(o.seed));
    } else if (o.family == "heavy") {
        need("--n");
        need("--width");
        out << write_chain_file(random_heavy_tail_chain(o.n, o.width, o.seed),
                                "heavy n=" + std::to_string(o.n) + " width=" + format_number(o.width) +
                                    " seed=" + std::to_string(o.seed));
    } else {
        throw Error(ErrorCode::SyntaxError, "unknown family '" + o.family + "'");
    }
}

void cmd_simulate(const Options& o, std::ostream& out) {
    const RateMatrix m = require_ctmc(parse_chain_file(read_input(o.file)), "simulate");
    if (o.start < 1 || o.start > m.size()) {
        throw Error(ErrorCode::BadStart, "--start must lie in 1.." + std::to_string(m.size()));
    }
    const auto est = simulate_replicas(m, o.start - 1, o.jumps, o.seed, o.replicas, o.threads, o.burn_in);
    const Distribution pi = stationary_ctmc(m);
    const Distribution psi = stationary_dtmc(jump_chain(m));
    out << "state,q,occupation,jump_frequency,pi,psi\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out << i + 1 << ',' << format_number(m.exit_rate(i)) << ',' << format_number(est.occupation(k)) << ','
            << format_number(est.jump_frequency(k)) << ',' << format_number(pi(k)) << ',' << format_number(psi(k))
            << '\n';
    }
}

void cmd_cycle_force(const Options& o, std::ostream& out) {
    const Chain chain = parse_chain_file(read_input(o.file));
    const double value = std::visit(
        [&](const auto& c) { return cycle_force(c, parse_cycle(o.cycle, c.size())); }, chain);
    out << "cycle_force = " << format_number(value) << '\n';
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DegenerateExitRates:
    case ErrorCode::DegeneratePi:
        return kExitDegenerate;
    case ErrorCode::NotIrreducible:
        return kExitNotIrreducible;
    default:
        return kExitInvalidInput;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local/global decomposition and Boltzmann certificates for continuous-time Markov chains",
                 "boltzchain"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "Correlation statistics and k-Boltzmann certificate of a ctmc file");
    analyze->add_option("file", o.file, "chain file ('-' for stdin)")->required();
    analyze->add_option("--format", o.format, "text | csv | structured")->capture_default_str();

    auto* generate = app.add_subcommand("generate", "Write a chain file to stdout");
    generate->add_option("family", o.family, "example-q1 | example-q2 | cyclic | iid | heavy")->required();
    generate->add_option("--n", o.n, "state count");
    generate->add_option("--low", o.low, "iid: lower rate bound");
    generate->add_option("--high", o.high, "iid: upper rate bound");
    generate->add_option("--width", o.width, "heavy: rates are 10^u, u uniform on [-width, width]");
    generate->add_option("--seed", o.seed, "random seed")->capture_default_str();
    generate->add_option("--exit-rates", o.exit_rates, "cyclic: geometric:BASE or list:v1,v2,...");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo occupation and jump frequencies");
    simulate->add_option("file", o.file, "ctmc file ('-' for stdin)")->required();
    simulate->add_option("--jumps", o.jumps, "jumps per replica")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", o.seed, "random seed")->required();
    simulate->add_option("--start", o.start, "1-based start state")->capture_default_str();
    simulate->add_option("--replicas", o.replicas, "independent replicas")->capture_default_str()->check(
        CLI::PositiveNumber);
    simulate->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
    simulate->add_option("--burn-in", o.burn_in, "segments discarded per replica")->capture_default_str();

    auto* cycle = app.add_subcommand("cycle-force", "Cycle force of a ctmc or dtmc along a cycle");
    cycle->add_option("file", o.file, "chain file ('-' for stdin)")->required();
    cycle->add_option("--cycle", o.cycle, "1-based states i1,i2,...")->required();

    auto* contour = app.add_subcommand("contour", "Grid of rho over (r2, rho_tilde) as CSV");
    contour->add_option("--r2", o.r2_spec, "min:max:steps")->required();
    contour->add_option("--rho-tilde", o.rho_tilde_spec, "min:max:steps")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        if (analyze->parsed()) {
            cmd_analyze(o, out);
        } else if (generate->parsed()) {
            cmd_generate(o, out, *generate);
        } else if (simulate->parsed()) {
            cmd_simulate(o, out);
        } else if (cycle->parsed()) {
            cmd_cycle_force(o, out);
        } else if (contour->parsed()) {
            out << emit_contour_csv(o.r2_spec, o.rho_tilde_spec);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace boltzchain::cli
