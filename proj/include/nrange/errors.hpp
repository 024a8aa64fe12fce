#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nrange {

enum class ErrorKind {
    InvalidMatrix,
    NotHermitian,
    EigenFailure,
    ZeroMatrix,
    DimensionMismatch,
    EmptySet,
    NotContained,
    AmbiguousClassification,
    NotNormal,
    InvalidSpec,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures remember the 1-based line they were detected on.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nrange
