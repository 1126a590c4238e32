#pragma once

#include "ctrlscore/linalg.hpp"

namespace ctrlscore {

struct Tolerances {
  // Class boundary for eigenvalue real parts, relative to ||A||_F.
  double zero_tol = kDefaultZeroTol;
  // Largest allowed ||A_zero||_F before deflation, relative to ||A||_F.
  // Bounds how far the zero-class block may be from a semisimple zero.
  double semisimple_tol = 1e-8;
};

struct AssumptionReport {
  // At least one eigenvalue with strictly negative real part.
  bool assumption1 = false;
  // Every imaginary-axis eigenvalue is zero, and zero is semisimple (the
  // zero-class diagonal block vanishes up to semisimple_tol * ||A||_F).
  bool assumption2 = false;
  std::vector<Complex> violating;  // eigenvalues breaking assumption 2
};

// Similarity R^{-1} A R = blkdiag(A_minus, A_zero, A_plus), classes ordered
// negative, zero, positive.  A_zero is stored as exactly zero once its
// pre-deflation residual passed the semisimplicity check.
struct SpectralSplit {
  Matrix A;  // the matrix that was split
  SchurFactorization schur;
  Matrix R;
  Matrix R_inv;
  Matrix A_minus;
  Matrix A_zero;
  Matrix A_plus;
  SpectrumClassification classification;
  double a_zero_residual = 0.0;  // ||A_zero||_F before deflation
};

// Partition of R^{-1} e_i by eigenvalue class.
struct ModalVectors {
  Vector r_minus;
  Vector r_zero;
  Vector r_plus;
};

// Evaluate the two structural assumptions for a classified spectrum.
// split_diag is the zero-class diagonal block of the ordered Schur factor
// (pass an empty matrix when the zero class is empty).
AssumptionReport check_assumptions(const SpectrumClassification& cls,
                                   const Matrix& split_diag,
                                   double semisimple_tol = Tolerances{}.semisimple_tol);

// Ordered Schur factorization followed by elimination of the sub-diagonal
// coupling blocks through three Sylvester solves.  Throws AssumptionError
// when the spectrum has a non-semisimple zero block or imaginary-axis
// eigenvalues away from zero.
SpectralSplit block_diagonalize(const Matrix& A, const Tolerances& tol = {});

// Rows of R^{-1} e_i split by class; i is a 0-based node index.
ModalVectors modal_vectors(const SpectralSplit& split, Index i);

}  // namespace ctrlscore
