#pragma once

#include <stdexcept>
#include <string>

namespace lfdkit {

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical limit cannot be decided from the available data,
/// e.g. a window schedule with fewer than three resolvable windows.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lfdkit
