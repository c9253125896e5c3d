#pragma once

#include <stdexcept>
#include <string>

namespace sublinear {

/// Failure category. The CLI maps each kind onto a process exit code.
enum class ErrorKind {
    argument,    // violated precondition on caller-supplied parameters
    data,        // malformed or unusable input data (CSV rows, JSON documents)
    length,      // not enough observations for the requested computation
    evaluation,  // a user function produced a non-finite value
    simulation,  // a mean policy left the ambiguity interval
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(ErrorKind::argument, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class LengthError : public Error {
public:
    LengthError(const std::string& what, std::size_t required, std::size_t available)
        : Error(ErrorKind::length, what), required_(required), available_(available) {}

    [[nodiscard]] std::size_t required() const noexcept { return required_; }
    [[nodiscard]] std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what) : Error(ErrorKind::evaluation, what) {}
};

class SimulationError : public Error {
public:
    SimulationError(const std::string& what, std::size_t step)
        : Error(ErrorKind::simulation, what), step_(step) {}

    /// Zero-based index of the offending step within the path.
    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace sublinear
