#pragma once

#include <stdexcept>
#include <string>

namespace tstab {

// Thrown when an operation is asked to run past its documented brute-force
// scale (these routines exist as oracles, not production paths).
class OracleScaleError : public std::runtime_error {
 public:
  explicit OracleScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numeric routine cannot certify its result at the requested
// precision (e.g. a quadrature whose integrand underflowed everywhere).
class PrecisionLossError : public std::runtime_error {
 public:
  explicit PrecisionLossError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tstab
