#pragma once

#include <stdexcept>
#include <string>

namespace casson {

// Every failure mode carries one of these codes so callers (and the CLI)
// can react without string matching.
enum class ErrorCode {
    EmptyInput,
    UnbalancedLabel,
    SignMismatch,
    DuplicatePassage,
    SchemaError,
    LevelClash,
    MissingSign,
    ChordLevelContradiction,
    InvalidDiagram,
    NotDoubleCrossing,
    NonIntegerResult,
    DegenerateGeometry,
    InvalidPermutation,
    NotEmbeddable,
    TangentViolation,
    CoincidentPoints,
    CurvesIntersect,
    NotInKN,
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

} // namespace casson
