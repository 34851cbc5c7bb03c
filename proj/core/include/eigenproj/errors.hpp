#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigenproj {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument or spectrum breaks a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An entry became NaN or infinite.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Gaussian elimination met a pivot below the singularity threshold.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double pivot)
      : Error(what), pivot_(pivot) {}

  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// The shifted QR iteration ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Eigenvalue clusters sit too close together to be told apart.
class ClusteringError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An intermediate product grew past the conditioning guard.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Generalized eigenspace bases do not span the whole space.
class InconsistentSpectrumError : public Error {
 public:
  using Error::Error;
};

/// Input to the Markov routines is not row-stochastic.
class NotStochasticError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace eigenproj
