#include "boltzchain/error.hpp"

namespace boltzchain {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::AbsorbingState: return "AbsorbingState";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NonpositiveExitRate: return "NonpositiveExitRate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::DegenerateExitRates: return "DegenerateExitRates";
    case ErrorCode::DegeneratePi: return "DegeneratePi";
    case ErrorCode::UndefinedAtPole: return "UndefinedAtPole";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::BadCycle: return "BadCycle";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::ConstantExitRates: return "ConstantExitRates";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::BadStart: return "BadStart";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::RowNotStochastic: return "RowNotStochastic";
    case ErrorCode::BadGridSpec: return "BadGridSpec";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace boltzchain
