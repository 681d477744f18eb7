#pragma once

#include <stdexcept>
#include <string>

namespace greenquad {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed files, invalid arguments, failed validation.
class InputError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public InputError {
public:
    using InputError::InputError;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedInputError : public InputError {
public:
    using InputError::InputError;
};

/// Expression syntax error; `offset` is the byte position in the source text.
class SyntaxError : public InputError {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Numerical failure during construction or evaluation.
class NumericalError : public Error {
public:
    using Error::Error;
};

class PoleOnIntervalError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegeneratePolynomialError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConditioningError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Rule construction failed its exactness self-check.
class ConstructionError : public NumericalError {
public:
    ConstructionError(const std::string& what, double worst_residual)
        : NumericalError(what + " (worst residual " + std::to_string(worst_residual) + ")"),
          worst_residual_(worst_residual) {}
    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

class EvaluationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitError : public NumericalError {
public:
    FitError(const std::string& what, double residual)
        : NumericalError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class BoundaryProximityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateLoopError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OrientationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace greenquad
