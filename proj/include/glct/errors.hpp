#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glct {

enum class ErrorKind {
    NotUnimodular,
    BZero,
    NotB0Case,
    NotSymmetric,
    InvalidGraph,
    DimensionMismatch,
    NotUnitModulus,
    InvalidDelta,
    UnsupportedRecipe,
    InvalidSpec,
    DegenerateDenominator,
    NumericalFailure,
    ParseError,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind()` lets callers
// (the CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace glct
