#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace numlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the 1-based byte position of the
/// offending character (end of input reports length + 1).
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable '" + name + "'"), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Division by zero, log of a non-positive number, and similar.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix must be nonsingular") {}
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Recursion or iteration limits exhausted without meeting the tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace numlab
