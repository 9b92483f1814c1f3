#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

enum class Polarization { ordinary, extraordinary };

// Raised for invalid user-supplied configuration (schema, units, grid
// coverage).  Distinct from std::domain_error, which signals numeric /
// physical domain violations during evaluation; the CLI maps the two to
// different exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace biphoton
