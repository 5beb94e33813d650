#pragma once

#include <stdexcept>
#include <string>

namespace mhd25 {

// Bad user input: grid sizes, unknown config keys, operator preconditions.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The solution left the regime where the model is meaningful (density
// approached vacuum or values stopped being finite). Carries the last
// time at which the state was still valid.
struct ValidityError : std::runtime_error {
  double last_good_time;
  ValidityError(const std::string& what, double t)
      : std::runtime_error(what), last_good_time(t) {}
};

}  // namespace mhd25
