// errors.hpp - Exception types mapped onto CLI exit codes

#pragma once

#include <stdexcept>
#include <string>

namespace cavsim {

// Invalid or inconsistent scenario input (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite values appeared in an integrated state (CLI exit code 3).
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(const std::string& what, double time)
        : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace cavsim
