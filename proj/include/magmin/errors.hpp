#pragma once

#include <stdexcept>
#include <string>

namespace magmin {

/// Base class for all solver errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two fields with incompatible grids were combined.
struct GridMismatch : Error {
  using Error::Error;
};

/// A cell magnetization vector was too short to renormalize.
struct DegenerateProjection : Error {
  using Error::Error;
};

/// Magnetostatic energy too small for the auxiliary-variable update.
struct DegenerateSav : Error {
  using Error::Error;
};

/// Scalar elimination denominator vanished in the auxiliary-variable solve.
struct SingularScalarSolve : Error {
  using Error::Error;
};

/// Magnetostatic energy came out significantly negative (broken kernel).
struct NegativeEnergy : Error {
  using Error::Error;
};

/// Auxiliary variable dropped below the admissible band.
struct NegativeAux : Error {
  using Error::Error;
};

/// A fixed-point iteration exhausted its sweep budget.
struct NoConvergence : Error {
  using Error::Error;
};

/// A per-cell linear system was numerically singular.
struct SingularCellSystem : Error {
  using Error::Error;
};

/// Unrecognized initial-state preset name.
struct UnknownPreset : Error {
  using Error::Error;
};

/// Bad key, value, or file in a run configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace magmin
