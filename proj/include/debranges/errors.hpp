#pragma once

#include <stdexcept>
#include <string>

namespace debranges {

/// Invalid user input: bad parameters, malformed configuration.
/// `field()` names the offending parameter when one is identifiable.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Numerical failure: non-convergence, step-size collapse, a value that theory
/// forbids (negative radicand beyond tolerance), and similar.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace debranges
