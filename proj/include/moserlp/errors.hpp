#pragma once

#include <stdexcept>
#include <string>

namespace moser {

// Bad input from the user: malformed files, out-of-range arguments, wrong mode.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Input is well formed but fails a mathematical validation step.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds a hard implementation limit.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical solve did not reach a usable state.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moser
