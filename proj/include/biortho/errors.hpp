#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid (alpha, a, b) or degree.
struct ParameterError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Formula used outside the range where it is proven (alpha < 1 asymptotics).
struct ScopeError : Error {
    using Error::Error;
};

// Non-convergence, overflow, or too few usable data points.
struct NumericalError : Error {
    using Error::Error;
};

struct BracketError : NumericalError {
    using NumericalError::NumericalError;
};

// Unknown or malformed configuration key.
struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientDataError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace biortho
