#pragma once

#include <stdexcept>
#include <string>

namespace gamedyn {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller mistakes: unknown names, bad parameters, shape mismatches, bad
/// configs. The CLI maps these to exit code 1.
struct UsageError : Error {
  using Error::Error;
};

struct CatalogError : UsageError {
  using UsageError::UsageError;
};

struct ParamError : UsageError {
  using UsageError::UsageError;
};

struct DimensionError : UsageError {
  using UsageError::UsageError;
};

struct ConfigError : UsageError {
  using UsageError::UsageError;
};

/// Numeric failures: non-finite evaluations, solver breakdowns, stagnating
/// searches. The CLI maps these to exit code 2.
struct NumericError : Error {
  using Error::Error;
};

/// Non-finite loss/gradient/Jacobian evaluation. `player` is the offending
/// player index, or -1 when the failure is not tied to one player.
struct EvalError : NumericError {
  int player;
  explicit EvalError(const std::string& msg, int player_index = -1)
      : NumericError(msg), player(player_index) {}
};

/// Line search could not decrease the objective at the smallest step size.
struct StagnationError : NumericError {
  using NumericError::NumericError;
};

}  // namespace gamedyn
