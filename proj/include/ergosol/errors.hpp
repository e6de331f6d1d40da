#pragma once

#include <stdexcept>
#include <string>

namespace ergosol {

// Bad user input: malformed config, precondition violations on public entry
// points.  The CLI maps this to exit code 1.
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested object cannot be built from valid-looking inputs (rational
// rotation number, unreachable partition tolerance, ...).  CLI exit code 2.
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical verification did not meet its tolerance; carries the achieved
// value so callers can report partial results.  CLI exit code 3.
struct VerificationError : std::runtime_error {
  VerificationError(const std::string& what, double achieved_)
      : std::runtime_error(what), achieved(achieved_) {}
  double achieved;
};

}  // namespace ergosol
