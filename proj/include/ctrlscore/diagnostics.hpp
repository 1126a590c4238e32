#pragma once

#include <optional>
#include <vector>

#include "ctrlscore/gramian.hpp"

namespace ctrlscore {

// Rank certificates for uniqueness of the two infinite-horizon optima.  The
// certificate matrix stacks, per node, the self-Kronecker products of the
// split modal vectors: all three classes for the log-det problem, the stable
// class alone for the trace-inverse problem.  Full column rank certifies a
// strictly convex objective and hence a unique minimizer.
struct UniquenessCertificates {
  Index rank_vcs = 0;
  Index rank_aecs = 0;
  bool vcs_certified = false;
  bool aecs_certified = false;
};

// A horizon at which finite-horizon uniqueness can degenerate: some
// eigenvalue pair sums to a purely imaginary value i*theta whose period
// divides T (T * theta is a nonzero multiple of 2*pi, to within tol).
struct ThetaPrimeWitness {
  double theta = 0.0;
  long ell = 0;
  double T = 0.0;
};

// Classical per-node summary statistics of the node Gramian at horizon T.
struct BaselineCentrality {
  double ac = 0.0;   // trace
  double vce = 0.0;  // sum of log eigenvalues above the rank cutoff
  double ace = 0.0;  // minus sum of reciprocal eigenvalues above the cutoff
  Index rank = 0;    // eigenvalues above 1e-10 times the largest
};

UniquenessCertificates uniqueness_certificates(const SpectralSplit& split);

std::optional<ThetaPrimeWitness> theta_prime_check(const SpectrumClassification& eigs,
                                                   double T, double tol = 1e-9);

std::vector<BaselineCentrality> baseline_centralities(const Matrix& A, double T);

// Rank of the controllability matrix [B, AB, ..., A^{n-1}B], B = diag(sqrt(p)).
Index controllability_rank(const Matrix& A, const Allocation& p);

}  // namespace ctrlscore
