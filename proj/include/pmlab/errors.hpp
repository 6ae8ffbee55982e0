#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmlab {

// Invalid parameters or arguments handed to a constructor or operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A generator exhausted its retry budget; `failed_check()` names the
// property that the last attempt violated.
class GenerationFailure : public std::runtime_error {
public:
    GenerationFailure(std::string check, std::size_t attempts)
        : std::runtime_error("generation failed after " + std::to_string(attempts) +
                             " attempts: " + check),
          check_(std::move(check)), attempts_(attempts) {}

    const std::string& failed_check() const noexcept { return check_; }
    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::string check_;
    std::size_t attempts_;
};

// An exact check was asked to enumerate a family beyond its budget.
class FamilyTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pmlab
