#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redld {

/// Violated precondition on an argument (bad vertex index, n too small, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class InputError : public std::runtime_error {
public:
    InputError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace redld
