#pragma once

#include <vector>

#include "ctrlscore/spectral.hpp"

namespace ctrlscore {

// Finite-horizon controllability Gramians of single-node inputs: entry i is
// the Gramian of input e_i over [0, horizon].
struct FiniteGramianSet {
  double horizon = 0.0;
  std::vector<Matrix> gramians;
};

// Per-node infinite-horizon Gramian blocks in the split basis.  v_minus[i]
// solves A_minus V + V A_minus^T + r_minus r_minus^T = 0; v_plus[i] solves
// the mirrored equation for -A_plus; v_zero[i] = r_zero r_zero^T.  Empty
// classes contribute 0x0 matrices.
struct ModalGramianSet {
  std::vector<Matrix> v_minus;
  std::vector<Matrix> v_zero;
  std::vector<Matrix> v_plus;
  int n_minus = 0;
  int n_zero = 0;
  int n_plus = 0;
};

// Controllability Gramian of input matrix B over [0, T]: one augmented
// matrix exponential over a shortened horizon followed by doubling steps.
Matrix finite_gramian(const Matrix& A, const Matrix& B, double T);

// Gramian of the single-node input e_i (0-based).
Matrix finite_gramian(const Matrix& A, Index i, double T);

// All n single-node Gramians at one horizon.
FiniteGramianSet finite_gramian_set(const Matrix& A, double T);

// Infinite-horizon blocks for every node of a split system.
ModalGramianSet modal_gramians(const SpectralSplit& split);

// Finite-horizon Gramian of the allocation-weighted input diag(p), expressed
// in the split basis and rescaled per class so that it converges (entrywise)
// to blkdiag(V_minus(p), V_zero(p), V_plus(p)) as T grows.
Matrix scaled_finite_gramian(const SpectralSplit& split, const Allocation& p, double T);

// Per-node matrices G_i with blkdiag(v_minus[i], v_zero[i], v_plus[i]).
std::vector<Matrix> full_family(const ModalGramianSet& set);

// Per-node stable blocks v_minus[i] only.
std::vector<Matrix> stable_family(const ModalGramianSet& set);

// Weighted sum G(p) = sum_i p_i G_i of a family of equally sized matrices.
Matrix assemble(const std::vector<Matrix>& family, const Allocation& p);
Matrix assemble(const FiniteGramianSet& set, const Allocation& p);
Matrix assemble(const ModalGramianSet& set, const Allocation& p);

}  // namespace ctrlscore
