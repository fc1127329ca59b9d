#include "casson/errors.hpp"

namespace casson {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::UnbalancedLabel: return "UnbalancedLabel";
        case ErrorCode::SignMismatch: return "SignMismatch";
        case ErrorCode::DuplicatePassage: return "DuplicatePassage";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::LevelClash: return "LevelClash";
        case ErrorCode::MissingSign: return "MissingSign";
        case ErrorCode::ChordLevelContradiction: return "ChordLevelContradiction";
        case ErrorCode::InvalidDiagram: return "InvalidDiagram";
        case ErrorCode::NotDoubleCrossing: return "NotDoubleCrossing";
        case ErrorCode::NonIntegerResult: return "NonIntegerResult";
        case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::NotEmbeddable: return "NotEmbeddable";
        case ErrorCode::TangentViolation: return "TangentViolation";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::CurvesIntersect: return "CurvesIntersect";
        case ErrorCode::NotInKN: return "NotInKN";
    }
    return "UnknownError";
}

} // namespace casson
