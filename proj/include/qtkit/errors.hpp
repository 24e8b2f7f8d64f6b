#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtkit {

// Error classes map onto distinct CLI exit codes: parse_error -> 2,
// precondition_error and resource_limit_error -> 3, theorem_violation -> 4.

class parse_error : public std::runtime_error {
public:
    parse_error(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(message)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& message)
        : std::runtime_error(message) {}
};

class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& message)
        : std::runtime_error(message) {}
};

// Raised when a proved statement fails to verify; signals an implementation
// bug, not a mathematical state.
class theorem_violation : public std::runtime_error {
public:
    explicit theorem_violation(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace qtkit
