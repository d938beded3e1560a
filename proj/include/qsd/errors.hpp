#pragma once

#include <stdexcept>

namespace qsd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix or vector shape mismatch.
struct DimensionError : Error {
  using Error::Error;
};

// Input violates a documented precondition (non-Hermitian matrix passed to a
// Hermitian-only routine, index out of range, ...).
struct ContractError : Error {
  using Error::Error;
};

// Structurally well-formed input whose values are out of tolerance.
struct ValidationError : Error {
  using Error::Error;
};

// Malformed file, missing field, or ill-typed field.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Optimizer failed to produce a usable measurement.
struct SolverError : Error {
  using Error::Error;
};

// Monte Carlo run aborted on inconsistent inputs.
struct SimulationError : Error {
  using Error::Error;
};

}  // namespace qsd
