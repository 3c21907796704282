#pragma once

#include <stdexcept>
#include <string>

namespace hbc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix / tensor shapes.
struct DimensionError : Error {
  using Error::Error;
};

/// Iterative eigensolver failed to reach the requested residual.
struct ConvergenceError : Error {
  double residual;
  ConvergenceError(const std::string& msg, double res)
      : Error(msg), residual(res) {}
};

/// Input MPS is not injective (degenerate leading transfer eigenvalue or
/// non-positive fixed point).
struct InjectivityError : Error {
  using Error::Error;
};

/// Two states on an edge are not close: the mixed transfer map has a
/// (nearly) modulus-degenerate leading eigenvalue.
struct NotCloseError : Error {
  using Error::Error;
};

/// |eta_1| >= |eta_0|: the state sits at a phase transition point.
struct PhaseTransitionError : Error {
  using Error::Error;
};

/// Requested dense expansion exceeds the configured size limit.
struct CapacityError : Error {
  using Error::Error;
};

/// Truncation removed every Schmidt value.
struct EmptyStateError : Error {
  using Error::Error;
};

/// Triangle trace modulus too small for a meaningful Arg.
struct IllConditionedError : Error {
  using Error::Error;
};

/// Per-triangle flux magnitude too close to the branch cut; the grid is
/// too coarse for the real-number reading.
struct RefinementError : Error {
  using Error::Error;
};

/// Vanishing consecutive overlap in a 0-d state family (symmetry-charge
/// transition along the loop).
struct ChargeTransitionError : Error {
  using Error::Error;
};

/// Two-site solver cell could not be certified translation invariant.
struct SymmetrizationError : Error {
  using Error::Error;
};

/// State is not symmetric under the requested symmetry element.
struct NotSymmetricError : Error {
  using Error::Error;
};

/// Simplicial complex construction produced inconsistent orientations.
struct ConstructionError : Error {
  using Error::Error;
};

/// Extracted symmetry unitaries are mutually inconsistent.
struct InconsistentGaugeError : Error {
  using Error::Error;
};

/// Ground-state solver did not converge.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace hbc
