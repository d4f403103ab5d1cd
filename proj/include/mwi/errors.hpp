#pragma once

#include <stdexcept>
#include <string>

namespace mwi {

// Base class for all library errors. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// mu is not dominated by nu in the convex order (no martingale coupling).
class NotInConvexOrder : public Error {
 public:
  using Error::Error;
};

// Ratio requested for mu == nu, where both W_q and the numerator vanish.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

// The simplex hit its iteration budget or lost numerical feasibility.
class SolverLimit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mwi
