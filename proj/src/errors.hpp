#pragma once

#include <stdexcept>
#include <string>

namespace vlcsec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter values, malformed config files, bad CLI input.
struct ConfigError : Error {
  using Error::Error;
};

// The requested QoS cannot be met for the given channel realization.
struct InfeasibleError : Error {
  using Error::Error;
};

// Numerical failure inside an optimizer.
struct SolverError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace vlcsec
