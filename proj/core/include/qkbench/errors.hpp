#pragma once

#include <stdexcept>
#include <string>

namespace qkbench {

/// Invalid user-supplied configuration (bad sizes, out-of-range settings,
/// malformed files). Recoverable by fixing the input.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

/// A caller broke an API contract (mismatched dimensions, invalid qubit
/// index). Indicates a programming error, not bad data.
class ContractViolation : public std::logic_error {
  public:
    explicit ContractViolation(const std::string &msg) : std::logic_error(msg) {}
};

}  // namespace qkbench
