#include "ctrlscore/gramian.hpp"

#include <cmath>
#include <string>

namespace ctrlscore {

namespace {

void require_horizon(double T, const char* what) {
  if (!std::isfinite(T) || T <= 0.0) {
    throw InvalidInputError(std::string(what) + ": horizon must be finite and positive");
  }
}

void symmetrize(Matrix& M) { M = 0.5 * (M + M.transpose()).eval(); }

}  // namespace

Matrix finite_gramian(const Matrix& A, const Matrix& B, double T) {
  require_square(A, "finite_gramian");
  require_finite(B, "finite_gramian");
  require_horizon(T, "finite_gramian");
  const Index n = A.rows();
  if (B.rows() != n || B.cols() != n) {
    throw InvalidInputError("finite_gramian: input matrix must match the state dimension");
  }

  const double scale = A.norm();
  if (scale == 0.0) {
    // Zero dynamics: the integrand is constant, so the integral is exact.
    Matrix W = B * T;
    symmetrize(W);
    return W;
  }

  // Choose a base horizon T0 with ||A|| * T0 <= 1, evaluate there with one
  // augmented exponential, then double the horizon k times:
  //   W(2t) = W(t) + e^{At} W(t) e^{A^T t}.
  int k = 0;
  double T0 = T;
  if (scale * T > 1.0) {
    k = static_cast<int>(std::ceil(std::log2(scale * T)));
    T0 = T / std::ldexp(1.0, k);
  }

  Matrix C = Matrix::Zero(2 * n, 2 * n);
  C.topLeftCorner(n, n) = -A;
  C.topRightCorner(n, n) = B;
  C.bottomRightCorner(n, n) = A.transpose();
  const Matrix F = matrix_exponential(C * T0);
  Matrix E = F.bottomRightCorner(n, n).transpose();  // e^{A T0}
  Matrix W = E * F.topRightCorner(n, n);
  symmetrize(W);
  if (!W.allFinite()) {
    throw HorizonOverflowError("finite_gramian: horizon too large for direct exponential", 0.0);
  }

  double t = T0;
  for (int j = 0; j < k; ++j) {
    W += (E * W * E.transpose()).eval();
    symmetrize(W);
    E = (E * E).eval();
    t *= 2.0;
    if (!W.allFinite() || !E.allFinite()) {
      throw HorizonOverflowError(
          "finite_gramian: Gramian overflowed while doubling to horizon " + std::to_string(t) +
              "; largest safe horizon ~" + std::to_string(t / 2.0),
          t / 2.0);
    }
  }
  return W;
}

Matrix finite_gramian(const Matrix& A, Index i, double T) {
  require_square(A, "finite_gramian");
  const Index n = A.rows();
  if (i < 0 || i >= n) {
    throw InvalidInputError("finite_gramian: node index out of range");
  }
  Matrix B = Matrix::Zero(n, n);
  B(i, i) = 1.0;
  return finite_gramian(A, B, T);
}

FiniteGramianSet finite_gramian_set(const Matrix& A, double T) {
  require_square(A, "finite_gramian_set");
  require_horizon(T, "finite_gramian_set");
  FiniteGramianSet set;
  set.horizon = T;
  const Index n = A.rows();
  set.gramians.reserve(n);
  for (Index i = 0; i < n; ++i) set.gramians.push_back(finite_gramian(A, i, T));

  // Sanity of the family: symmetric PSD members whose average is positive
  // definite (every state is reachable through some node).
  Matrix G = Matrix::Zero(n, n);
  for (const Matrix& W : set.gramians) {
    if ((W - W.transpose()).norm() > 1e-10 * std::max(W.norm(), 1.0)) {
      throw NumericalError("finite_gramian_set: Gramian lost symmetry");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(W, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(W.norm(), 1.0)) {
      throw NumericalError("finite_gramian_set: Gramian lost positive semidefiniteness");
    }
    G += W / static_cast<double>(n);
  }
  Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("finite_gramian_set: averaged Gramian is not positive definite");
  }
  return set;
}

ModalGramianSet modal_gramians(const SpectralSplit& split) {
  const Index n = split.R_inv.rows();
  ModalGramianSet set;
  set.n_minus = split.classification.n_minus;
  set.n_zero = split.classification.n_zero;
  set.n_plus = split.classification.n_plus;

  for (Index i = 0; i < n; ++i) {
    const ModalVectors mv = modal_vectors(split, i);
    if (set.n_minus > 0) {
      Matrix V = solve_lyapunov(split.A_minus, Matrix(mv.r_minus * mv.r_minus.transpose()));
      const double res =
          (split.A_minus * V + V * split.A_minus.transpose() + mv.r_minus * mv.r_minus.transpose())
              .norm();
      if (res > 1e-10 * std::max(1.0, V.norm()) * std::max(1.0, split.A_minus.norm())) {
        throw NumericalError("modal_gramians: stable block residual " + std::to_string(res));
      }
      set.v_minus.push_back(std::move(V));
    } else {
      set.v_minus.emplace_back(0, 0);
    }
    if (set.n_zero > 0) {
      set.v_zero.push_back(mv.r_zero * mv.r_zero.transpose());
    } else {
      set.v_zero.emplace_back(0, 0);
    }
    if (set.n_plus > 0) {
      Matrix V = solve_lyapunov(Matrix(-split.A_plus), Matrix(mv.r_plus * mv.r_plus.transpose()));
      const double res =
          (split.A_plus * V + V * split.A_plus.transpose() - mv.r_plus * mv.r_plus.transpose())
              .norm();
      if (res > 1e-10 * std::max(1.0, V.norm()) * std::max(1.0, split.A_plus.norm())) {
        throw NumericalError("modal_gramians: unstable block residual " + std::to_string(res));
      }
      set.v_plus.push_back(std::move(V));
    } else {
      set.v_plus.emplace_back(0, 0);
    }
  }
  return set;
}

Matrix scaled_finite_gramian(const SpectralSplit& split, const Allocation& p, double T) {
  require_horizon(T, "scaled_finite_gramian");
  const Index n = split.R_inv.rows();
  if (p.size() != n) {
    throw InvalidInputError("scaled_finite_gramian: allocation size mismatch");
  }
  const int nm = split.classification.n_minus;
  const int n0 = split.classification.n_zero;
  const int np = split.classification.n_plus;

  const Matrix B = Matrix(p.vec().asDiagonal());
  const Matrix W = finite_gramian(split.A, B, T);
  const Matrix S = split.R_inv * W * split.R_inv.transpose();

  // Per-class rescaling applied block-wise: identity on the stable block,
  // 1/sqrt(T) on the zero block (so the zero/zero corner divides by exactly
  // T), e^{-A_plus T} on the unstable block (computed directly so the inverse
  // never overflows).
  Matrix out = Matrix::Zero(n, n);
  const double rt = std::sqrt(T);
  out.block(0, 0, nm, nm) = S.block(0, 0, nm, nm);
  out.block(nm, 0, n0, nm) = S.block(nm, 0, n0, nm) / rt;
  out.block(0, nm, nm, n0) = S.block(0, nm, nm, n0) / rt;
  out.block(nm, nm, n0, n0) = S.block(nm, nm, n0, n0) / T;
  if (np > 0) {
    const Matrix Ep = matrix_exponential(Matrix(-split.A_plus * T));
    const Index op = nm + n0;
    out.block(0, op, nm, np) = S.block(0, op, nm, np) * Ep.transpose();
    out.block(op, 0, np, nm) = Ep * S.block(op, 0, np, nm);
    out.block(nm, op, n0, np) = S.block(nm, op, n0, np) * Ep.transpose() / rt;
    out.block(op, nm, np, n0) = Ep * S.block(op, nm, np, n0) / rt;
    out.block(op, op, np, np) = Ep * S.block(op, op, np, np) * Ep.transpose();
  }
  symmetrize(out);
  return out;
}

std::vector<Matrix> full_family(const ModalGramianSet& set) {
  const int n = static_cast<int>(set.v_minus.size());
  const int d = set.n_minus + set.n_zero + set.n_plus;
  std::vector<Matrix> family;
  family.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix G = Matrix::Zero(d, d);
    G.block(0, 0, set.n_minus, set.n_minus) = set.v_minus[i];
    G.block(set.n_minus, set.n_minus, set.n_zero, set.n_zero) = set.v_zero[i];
    G.block(set.n_minus + set.n_zero, set.n_minus + set.n_zero, set.n_plus, set.n_plus) =
        set.v_plus[i];
    family.push_back(std::move(G));
  }
  return family;
}

std::vector<Matrix> stable_family(const ModalGramianSet& set) {
  if (set.n_minus < 1) {
    throw AssumptionError("stable_family: system has no strictly stable eigenvalues");
  }
  return set.v_minus;
}

Matrix assemble(const std::vector<Matrix>& family, const Allocation& p) {
  if (family.empty()) {
    throw InvalidInputError("assemble: empty family");
  }
  if (static_cast<Index>(family.size()) != p.size()) {
    throw InvalidInputError("assemble: allocation size mismatch");
  }
  const Index d = family.front().rows();
  Matrix G = Matrix::Zero(d, d);
  for (Index i = 0; i < p.size(); ++i) {
    if (family[i].rows() != d || family[i].cols() != d) {
      throw InvalidInputError("assemble: family members must share one square dimension");
    }
    G += p[i] * family[i];
  }
  symmetrize(G);
  return G;
}

Matrix assemble(const FiniteGramianSet& set, const Allocation& p) {
  return assemble(set.gramians, p);
}

Matrix assemble(const ModalGramianSet& set, const Allocation& p) {
  return assemble(full_family(set), p);
}

}  // namespace ctrlscore
