#pragma once

#include <stdexcept>
#include <string>

namespace beckdiff {

enum class ErrorCode {
    // exact arithmetic
    ZeroDenominator,
    NotInvertible,
    InvalidModulus,
    // polynomial layer
    MixedContext,
    SyntaxError,
    UnknownVariable,
    NegativeExponent,
    InvalidCoefficient,
    NonFieldBase,
    ResourceLimit,
    // modules
    RankMismatch,
    ShapeMismatch,
    // algebras and tables
    DuplicateGenerator,
    UnknownVariableInRelation,
    InfiniteDimensional,
    NonFiniteBase,
    NotSurjective,
    NotARingHom,
    NotAModule,
    KernelSquareNonzero,
    // groups
    NotAssociative,
    NoIdentity,
    NoInverse,
    KernelNonAbelian,
    ActionIllDefined,
    NotAGroupHom,
    NonFinite,
    // i/o
    InvalidInput,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::InvalidModulus: return "InvalidModulus";
        case ErrorCode::MixedContext: return "MixedContext";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::NegativeExponent: return "NegativeExponent";
        case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
        case ErrorCode::NonFieldBase: return "NonFieldBase";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
        case ErrorCode::UnknownVariableInRelation: return "UnknownVariableInRelation";
        case ErrorCode::InfiniteDimensional: return "InfiniteDimensional";
        case ErrorCode::NonFiniteBase: return "NonFiniteBase";
        case ErrorCode::NotSurjective: return "NotSurjective";
        case ErrorCode::NotARingHom: return "NotARingHom";
        case ErrorCode::NotAModule: return "NotAModule";
        case ErrorCode::KernelSquareNonzero: return "KernelSquareNonzero";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NoIdentity: return "NoIdentity";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::KernelNonAbelian: return "KernelNonAbelian";
        case ErrorCode::ActionIllDefined: return "ActionIllDefined";
        case ErrorCode::NotAGroupHom: return "NotAGroupHom";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    Error(ErrorCode code, const std::string& message, std::size_t position)
        : std::runtime_error(std::string(error_code_name(code)) + " at position " +
                             std::to_string(position) + ": " + message),
          code_(code),
          position_(position),
          has_position_(true) {}

    ErrorCode code() const { return code_; }
    bool has_position() const { return has_position_; }
    std::size_t position() const { return position_; }

  private:
    ErrorCode code_;
    std::size_t position_ = 0;
    bool has_position_ = false;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace beckdiff
