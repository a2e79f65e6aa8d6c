#pragma once

#include <stdexcept>
#include <string>

namespace hypercx {

// Base class for everything thrown by the library. The CLI maps these to
// process exit codes: input/usage problems -> 2, construction failures -> 3.
struct Error : std::runtime_error {
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Mismatched or invalid matrix/vector shapes.
struct ShapeError : Error {
  using Error::Error;
};

// Arguments outside an operation's domain (bad dimension, bad level, ...).
struct DomainError : Error {
  using Error::Error;
};

// Malformed or inconsistent input data (documents, tables without a unit, ...).
struct InvalidInputError : Error {
  using Error::Error;
};

// A numerical construction failed its own validation gates.
struct ConstructionError : Error {
  explicit ConstructionError(const std::string& what_arg, double residual = 0.0)
      : Error(what_arg), residual(residual) {}
  double residual;
};

// No element of the table acts as a two-sided unit within tolerance.
struct NoIdentityError : ConstructionError {
  using ConstructionError::ConstructionError;
};

// The bilinear form induced by conjugation is not scalar along the unit.
struct MetricInconsistencyError : ConstructionError {
  using ConstructionError::ConstructionError;
};

// A spinor or metric degenerated (isotropic spinor, singular metric, ...).
struct DegenerateInputError : ConstructionError {
  using ConstructionError::ConstructionError;
};

// A linear system expected to have a one-dimensional solution space did not.
struct AmbiguityError : ConstructionError {
  using ConstructionError::ConstructionError;
};

// Table synthesis from operators and a spin-tensor produced constants that
// fail a structural requirement (typically: no usable unit element).
struct SynthesisError : ConstructionError {
  using ConstructionError::ConstructionError;
};

// The candidate bilinear spinor form has the wrong symmetry type for this
// dimension residue (its symmetric part vanishes).
struct WrongResidueError : ConstructionError {
  using ConstructionError::ConstructionError;
};

}  // namespace hypercx
