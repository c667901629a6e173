#include "glct/errors.hpp"

namespace glct {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::BZero: return "BZero";
        case ErrorKind::NotB0Case: return "NotB0Case";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotUnitModulus: return "NotUnitModulus";
        case ErrorKind::InvalidDelta: return "InvalidDelta";
        case ErrorKind::UnsupportedRecipe: return "UnsupportedRecipe";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace glct
