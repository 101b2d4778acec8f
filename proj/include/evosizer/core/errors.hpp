#pragma once

#include <stdexcept>
#include <string>

namespace evosizer {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Bad or inconsistent user configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An evaluation backend could not produce a result (CLI exit code 3).
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A retry loop exhausted its cap without finding a feasible candidate.
class StarvationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ContractViolation(message);
    }
}

} // namespace evosizer
