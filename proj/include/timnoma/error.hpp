#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace timnoma {

/// Distinguishes the ways scenario inputs can be rejected.
enum class ErrorCode {
    EmptyDistances,
    NonPositiveDistance,
    UnsortedDistances,
    DistanceBeyondRadius,
    InvalidRadius,
    InvalidPathLossExponent,
    GroupCountOutOfRange,
    UserIndexOutOfRange,
    GroupIndexOutOfRange,
    NonPositivePower,
    DimensionMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ErrorCode code, const std::string& what)
        : std::invalid_argument(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Malformed configuration text. Carries the 1-based line, 0 when not tied to a line.
class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(std::size_t line, const std::string& field, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// A syntactically valid config that violates one or more invariants.
/// Every violation is collected before throwing.
class ConfigValidationError : public std::runtime_error {
public:
    explicit ConfigValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace timnoma
