#pragma once

#include <stdexcept>

namespace designforge {

// Raised when a precondition of a construction or an algebraic operation is
// violated. The message names the violated condition.
class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace designforge
