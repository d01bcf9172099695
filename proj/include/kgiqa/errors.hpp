#pragma once

#include <stdexcept>
#include <string>

namespace kgiqa {

// Error taxonomy mirrors the CLI exit codes: config 1, data 2, verification 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a numeric op produces NaN/Inf from finite inputs.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kgiqa
