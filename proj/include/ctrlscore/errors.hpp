#pragma once

#include <stdexcept>
#include <string>

namespace ctrlscore {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something malformed: non-finite entries, empty or
// mismatched dimensions, indices out of range, allocations off the simplex.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// File contents could not be interpreted (bad tokens, ragged rows, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The QR iteration underlying a Schur decomposition failed to converge.
class QrConvergenceError : public Error {
 public:
  using Error::Error;
};

// A Sylvester equation has no unique solution: some eigenvalue of the first
// coefficient is (numerically) the negative of one of the second.
class SingularSpectrumError : public Error {
 public:
  using Error::Error;
};

// The coefficient of a Lyapunov equation is not Hurwitz.
class NotHurwitzError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be positive definite failed its Cholesky factorization.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

// An exponential-of-horizon quantity left the representable floating range.
// largest_safe_horizon is the longest horizon that was still computed
// successfully before overflow (0 when unknown).
class HorizonOverflowError : public Error {
 public:
  HorizonOverflowError(const std::string& what, double largest_safe)
      : Error(what), largest_safe_horizon(largest_safe) {}
  double largest_safe_horizon;
};

// The system violates an assumption required by the requested computation.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// The backtracking line search hit its step-size floor without finding a
// point of sufficient decrease.
class StagnationError : public Error {
 public:
  using Error::Error;
};

// An internal residual or definiteness postcondition failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctrlscore
