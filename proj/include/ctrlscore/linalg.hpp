#pragma once

#include <vector>

#include "ctrlscore/types.hpp"

namespace ctrlscore {

inline constexpr double kDefaultZeroTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-8;

enum class SpectralClass { Negative, Zero, Positive };

struct ClassifiedEigenvalue {
  Complex value;
  SpectralClass cls = SpectralClass::Zero;
};

// Eigenvalues labeled by the sign of their real part.  An eigenvalue counts
// as zero-class when |Re| <= zero_tol * scale, where scale is the Frobenius
// norm of the matrix the spectrum came from.
struct SpectrumClassification {
  int n_minus = 0;
  int n_zero = 0;
  int n_plus = 0;
  std::vector<ClassifiedEigenvalue> eigenvalues;  // diagonal order of the Schur factor
  double scale = 0.0;
  double zero_tol = kDefaultZeroTol;
};

// A = orthogonal * quasi_triangular * orthogonal^T where quasi_triangular is
// block lower triangular with 1x1 and 2x2 diagonal blocks (2x2 blocks carry
// complex-conjugate eigenvalue pairs).
struct SchurFactorization {
  Matrix orthogonal;
  Matrix quasi_triangular;
  std::vector<Complex> block_eigenvalues;  // one per eigenvalue, diagonal order
  std::vector<int> block_sizes;            // 1 or 2, diagonal order
};

struct OrderedSchur {
  SchurFactorization factorization;
  SpectrumClassification classification;
};

// e^M via scaling-and-squaring with Pade approximants.  Throws
// HorizonOverflowError when the result leaves the representable range.
Matrix matrix_exponential(const Matrix& M);

// Real Schur form of A with the diagonal blocks reordered so that the
// eigenvalue classes appear negative, then zero, then positive.
OrderedSchur ordered_real_schur(const Matrix& A, double zero_tol = kDefaultZeroTol);

// Unique Y with C1*Y + Y*C2 + P = 0 (Bartels-Stewart).  Throws
// SingularSpectrumError when an eigenvalue of C1 and one of C2 sum to zero
// within zero_tol * (||C1|| + ||C2||).
Matrix solve_sylvester(const Matrix& C1, const Matrix& C2, const Matrix& P,
                       double zero_tol = kDefaultZeroTol);

// Unique symmetric Y with C*Y + Y*C^T + P = 0 for Hurwitz C and symmetric P.
// The result is symmetrized; if P is positive semidefinite the result is
// checked to be positive semidefinite as well.
Matrix solve_lyapunov(const Matrix& C, const Matrix& P,
                      double zero_tol = kDefaultZeroTol);

// Number of singular values exceeding rel_tol times the largest one.
Index numerical_rank(const Matrix& M, double rel_tol = kDefaultRankTol);

}  // namespace ctrlscore
