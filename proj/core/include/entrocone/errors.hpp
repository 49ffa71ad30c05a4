#pragma once

#include <stdexcept>
#include <string>

namespace entrocone {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear form or vector does not match its ambient space.
struct DimensionMismatchError : Error {
  using Error::Error;
};

/// Row/ray caps or coefficient-size limits exceeded; reported distinctly
/// from hard errors so callers can retry with larger budgets.
struct ResourceLimitError : Error {
  using Error::Error;
};

/// A box whose context marginals disagree (nonsignaling violated).
struct SignalingBoxError : Error {
  using Error::Error;
};

/// Lookup of an unknown registry id, row id or coordinate.
struct UnknownNameError : Error {
  using Error::Error;
};

/// An operation that requires an infeasible input received a feasible one.
struct FeasibleInputError : Error {
  using Error::Error;
};

/// Malformed textual input (expressions, scenario shorthands, JSON).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace entrocone
