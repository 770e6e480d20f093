#pragma once

#include <stdexcept>
#include <string>

namespace stmod {

// Malformed or inconsistent input (CLI exit code 1).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured enumeration or degree cap blocks an exact answer (exit 2).
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  long cap() const noexcept { return cap_; }

 private:
  long cap_;
};

// An internal invariant failed to replay. Always a bug (exit 3).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stmod
