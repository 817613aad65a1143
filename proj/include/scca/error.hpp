#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scca {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotPositiveDefinite,
    ClassViolation,
    InvalidSparsity,
    CholeskyFailure,
    SqrtFailure,
    SingularCovariance,
    MissingTruth,
    InvalidS,
    SvdFailure,
    DegenerateTruth,
    PreconditionViolated,
    NotUnitNorm,
    FamilyTooSmall,
    TooLarge,
    Overflow,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` carries the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ClassViolation: return "ClassViolation";
    case ErrorCode::InvalidSparsity: return "InvalidSparsity";
    case ErrorCode::CholeskyFailure: return "CholeskyFailure";
    case ErrorCode::SqrtFailure: return "SqrtFailure";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::MissingTruth: return "MissingTruth";
    case ErrorCode::InvalidS: return "InvalidS";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::DegenerateTruth: return "DegenerateTruth";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotUnitNorm: return "NotUnitNorm";
    case ErrorCode::FamilyTooSmall: return "FamilyTooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace scca
