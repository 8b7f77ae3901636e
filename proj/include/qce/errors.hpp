#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qce {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape or subsystem-dimension mismatch.
struct DimensionError : Error {
  using Error::Error;
};

/// A state or channel failed its defining constraints (PSD, trace, completeness).
struct ValidationError : Error {
  using Error::Error;
};

/// Malformed channel/state file.
struct ParseError : Error {
  using Error::Error;
};

/// Threshold bisection aborted: the predicate flipped more than once on the probe grid.
struct NonMonotoneError : Error {
  std::vector<std::pair<double, bool>> probes;
  NonMonotoneError(const std::string& msg, std::vector<std::pair<double, bool>> probe_table)
      : Error(msg), probes(std::move(probe_table)) {}
};

}  // namespace qce
