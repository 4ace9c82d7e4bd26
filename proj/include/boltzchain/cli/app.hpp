#pragma once

#include "boltzchain/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace boltzchain::cli {

// Process exit codes, stable across subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitDegenerate = 2,
    kExitNotIrreducible = 3,
};

int exit_code_for(ErrorCode code) noexcept;

// Runs one command line (args[0] is the program name). Data goes to `out`,
// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boltzchain::cli
