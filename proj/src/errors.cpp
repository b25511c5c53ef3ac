#include "qlbit/errors.hpp"

namespace qlbit {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::BasisState: return "BasisState";
        case ErrorCode::ObstructionViolated: return "ObstructionViolated";
        case ErrorCode::DegenerateRatio: return "DegenerateRatio";
        case ErrorCode::NonzeroGapImpossible: return "NonzeroGapImpossible";
        case ErrorCode::ClassInvariantViolation: return "ClassInvariantViolation";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::LatticeViolation: return "LatticeViolation";
        case ErrorCode::NotAlgebraicallyRegular: return "NotAlgebraicallyRegular";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::IllConditionedDiagonalization: return "IllConditionedDiagonalization";
        case ErrorCode::InitialStateNotSynchronized: return "InitialStateNotSynchronized";
        case ErrorCode::ExactCheckFailed: return "ExactCheckFailed";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace qlbit
