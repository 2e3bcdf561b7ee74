// errors.hpp - exception types shared by the library and the CLI

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qbat {

// Caller misuse: dimension mismatch, invalid enum choice, unknown sweep axis.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A value breaks a documented invariant. `field()` names the offending field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Malformed configuration document (syntax, not semantics).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Non-finite values, failed convergence, unresolved degeneracy.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, std::optional<double> time = std::nullopt)
        : std::runtime_error(time ? what + " (t = " + std::to_string(*time) + ")" : what), time_(time) {}

    std::optional<double> time() const noexcept { return time_; }

private:
    std::optional<double> time_;
};

class DegeneracyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qbat
