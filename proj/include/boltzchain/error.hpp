#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boltzchain {

enum class ErrorCode {
    NonSquare,
    TooLarge,
    NegativeRate,
    NonFinite,
    AbsorbingState,
    NotIrreducible,
    NotStochastic,
    NonpositiveExitRate,
    DimensionMismatch,
    SolveFailure,
    DegenerateExitRates,
    DegeneratePi,
    UndefinedAtPole,
    OutOfDomain,
    MissingEdge,
    BadCycle,
    BadSize,
    ConstantExitRates,
    BadBounds,
    BadStart,
    EmptyTrajectory,
    SyntaxError,
    NegativeEntry,
    NonzeroDiagonal,
    RowNotStochastic,
    BadGridSpec,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure surfaces as this exception; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace boltzchain
