#pragma once

#include <stdexcept>
#include <string>

namespace paucity {

/// Bad arguments or preconditions (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested size exceeds an enumeration or memory budget (CLI exit code 3).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 16-bit tally would wrap (CLI exit code 3).
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace paucity
