#pragma once

#include <stdexcept>
#include <string>

namespace mtt {

// Raised for anything the caller could have gotten right: malformed
// documents, out-of-range sizes, ring/shape mismatches, unmet preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace mtt
