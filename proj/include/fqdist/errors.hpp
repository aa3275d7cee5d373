#pragma once

#include <stdexcept>
#include <string>

namespace fqdist {

// Malformed parameters, configs or inputs. Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A theorem entry point was handed a zero distance.
class DegenerateDistance : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An exact computation was refused because its enumeration would exceed
// the configured budget. Never replaced by an approximation. Exit code 3.
class ScaleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqdist
