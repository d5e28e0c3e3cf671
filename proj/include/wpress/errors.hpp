#pragma once

#include <stdexcept>

namespace wpress {

// Enumeration / LP size caps were exceeded. CLI maps this to exit code 3.
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input file or command-line configuration. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wpress
