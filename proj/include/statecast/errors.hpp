#pragma once

#include <stdexcept>
#include <string>

namespace statecast {

/// Invalid user input: bad config fields, out-of-range parameters,
/// mismatched shapes requested by the caller.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Matrix/vector shape mismatch. The message names the offending operand.
class DimensionError : public ValidationError {
public:
    DimensionError(const std::string& operand, long rows, long cols,
                   long expected_rows, long expected_cols)
        : ValidationError(operand + " has shape " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", expected " +
                          std::to_string(expected_rows) + "x" +
                          std::to_string(expected_cols)),
          operand_(operand) {}

    explicit DimensionError(const std::string& msg) : ValidationError(msg) {}

    const std::string& operand() const { return operand_; }

private:
    std::string operand_;
};

/// Numerical failure at runtime: singular or ill-conditioned matrices.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File system and parsing failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed file contents (unparsable timestamps, bad headers).
class ParseError : public IoError {
public:
    explicit ParseError(const std::string& msg) : IoError(msg) {}
};

} // namespace statecast
