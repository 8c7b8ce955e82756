#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ghzw {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed state document. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

// Input is well formed but mathematically unusable (null state, N < 4, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// A configured size cap or sampling budget was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace ghzw
