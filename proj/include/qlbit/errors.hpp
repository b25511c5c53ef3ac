#pragma once

#include <stdexcept>
#include <string>

namespace qlbit {

/// Machine-readable failure categories surfaced by the library.
enum class ErrorCode {
    BasisState,              // amplitude ratio requested for a basis state
    ObstructionViolated,     // target ratio outside the class's realizable set
    DegenerateRatio,         // r = +-i, gap formula collapses
    NonzeroGapImpossible,    // r = +-i with delta != 0 in the real-coupling model
    ClassInvariantViolation, // DesignParams / BlockOperator class rules broken
    ParityViolation,         // q*k odd, no simple regular graph exists
    DegreeOutOfRange,        // k outside [0, q-1]
    NotRegular,
    NotSymmetric,
    SelfLoop,
    LatticeViolation,        // |c|+|d| > q
    NotAlgebraicallyRegular, // row/column sums not constant
    DimensionMismatch,
    SizeCapExceeded,
    SolverFailure,
    IllConditionedDiagonalization,
    InitialStateNotSynchronized,
    ExactCheckFailed,        // exact Z[i] verification found a nonzero (never expected)
    InvalidArgument,
    IoError,
    ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qlbit
