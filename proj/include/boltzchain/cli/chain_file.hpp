#pragma once

#include "boltzchain/chain.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace boltzchain::cli {

// Line-oriented chain format:
//   # comment lines (and blank lines) anywhere
//   ctmc N | dtmc N
//   N lines of N whitespace-separated decimal numbers
// ctmc diagonals must be written as 0; dtmc rows must sum to 1 within 1e-9.
enum class ChainKind { Ctmc, Dtmc };

struct ChainFile {
    ChainKind kind = ChainKind::Ctmc;
    Matrix matrix;
};

using Chain = std::variant<RateMatrix, JumpChain>;

// Syntax and shape only. Diagnostics carry "line L, column C".
// Throws SyntaxError, DimensionMismatch, TooLarge.
ChainFile read_chain_file(std::string_view text);

// read_chain_file plus validation. Additionally throws NegativeEntry,
// NonzeroDiagonal, RowNotStochastic, AbsorbingState, NotIrreducible.
Chain parse_chain_file(std::string_view text);

std::string write_chain_file(const RateMatrix& m, std::string_view comment = {});
std::string write_chain_file(const JumpChain& p, std::string_view comment = {});

// 12 significant digits, shortest of fixed/scientific ("%.12g").
std::string format_number(double value);

}  // namespace boltzchain::cli
