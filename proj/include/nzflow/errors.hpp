#pragma once

#include <stdexcept>
#include <string>

namespace nzflow {

// Raised when an exact computation is requested beyond its configured size
// cap (callers should switch to the log-space or Monte Carlo path).
class size_cap_error : public std::runtime_error {
 public:
  explicit size_cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a rejection-sampling loop exhausts its attempt budget.
class retry_exhausted_error : public std::runtime_error {
 public:
  explicit retry_exhausted_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nzflow
