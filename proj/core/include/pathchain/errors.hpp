#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pathchain {

// Base of every error the library throws. `kind()` is a stable machine tag
// used by the CLI when it serialises failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

// Malformed or inconsistent caller data (bad shapes, non-finite values).
class InputError : public Error {
public:
    explicit InputError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : Error(what), line_(line) {}
    const char* kind() const noexcept override { return "input"; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

// A numeric knob outside its admissible range.
class ParameterError : public InputError {
public:
    using InputError::InputError;
    const char* kind() const noexcept override { return "parameter"; }
};

// Input that is well-formed but carries no usable geometry (all duplicates,
// zero rows, zero k-NN radius, ...).
class DegenerateInputError : public InputError {
public:
    using InputError::InputError;
    const char* kind() const noexcept override { return "degenerate_input"; }
};

// An iterative solver hit its iteration cap. Carries the residual trace.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const char* kind() const noexcept override { return "convergence"; }
    const std::vector<double>& residual_history() const noexcept { return history_; }
    double last_residual() const noexcept { return history_.empty() ? 0.0 : history_.back(); }

private:
    std::vector<double> history_;
};

// Non-finite or sign-violating intermediate inside a solver.
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
};

// A precondition on an otherwise valid object does not hold
// (e.g. a non-reversible chain handed to the diffusion map).
class ContractError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "contract"; }
};

}  // namespace pathchain
