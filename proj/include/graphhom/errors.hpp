#pragma once

#include <stdexcept>
#include <string>

namespace graphhom {

// Malformed input: bad arguments, invalid files, violated preconditions.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would exceed the configured size limits.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace graphhom
