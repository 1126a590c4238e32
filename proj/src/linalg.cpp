#include "ctrlscore/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

namespace ctrlscore {

namespace {

int class_rank(SpectralClass c) {
  switch (c) {
    case SpectralClass::Negative: return 0;
    case SpectralClass::Zero: return 1;
    case SpectralClass::Positive: return 2;
  }
  return 1;
}

SpectralClass classify_real_part(double re, double threshold) {
  if (re < -threshold) return SpectralClass::Negative;
  if (re > threshold) return SpectralClass::Positive;
  return SpectralClass::Zero;
}

// Eigenvalues of a real 2x2 matrix.
std::pair<Complex, Complex> eig2x2(double a, double b, double c, double d) {
  const double m = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return {Complex(m + s, 0.0), Complex(m - s, 0.0)};
  }
  const double s = std::sqrt(-disc);
  return {Complex(m, s), Complex(m, -s)};
}

struct DiagBlock {
  int size = 1;
  Complex e1;
  Complex e2;  // meaningful only when size == 2
  int rank = 1;
};

// Split an upper quasi-triangular matrix into its 1x1 / 2x2 diagonal blocks.
std::vector<DiagBlock> diagonal_blocks(const Matrix& S, double threshold) {
  const Index n = S.rows();
  std::vector<DiagBlock> blocks;
  for (Index k = 0; k < n;) {
    if (k + 1 < n && S(k + 1, k) != 0.0) {
      DiagBlock b;
      b.size = 2;
      std::tie(b.e1, b.e2) = eig2x2(S(k, k), S(k, k + 1), S(k + 1, k), S(k + 1, k + 1));
      b.rank = class_rank(classify_real_part(0.5 * (b.e1.real() + b.e2.real()), threshold));
      blocks.push_back(b);
      k += 2;
    } else {
      DiagBlock b;
      b.size = 1;
      b.e1 = Complex(S(k, k), 0.0);
      b.rank = class_rank(classify_real_part(S(k, k), threshold));
      blocks.push_back(b);
      k += 1;
    }
  }
  return blocks;
}

std::vector<Complex> block_eigenvalue_list(const std::vector<DiagBlock>& blocks) {
  std::vector<Complex> out;
  for (const auto& b : blocks) {
    out.push_back(b.e1);
    if (b.size == 2) out.push_back(b.e2);
  }
  return out;
}

// Solve B1*X - X*B2 = -T12 for small blocks via a dense Kronecker system.
Matrix small_sylvester_shift(const Matrix& B1, const Matrix& B2, const Matrix& T12) {
  const Index p = B1.rows();
  const Index q = B2.rows();
  Matrix K = Matrix::Zero(p * q, p * q);
  for (Index c = 0; c < q; ++c) {
    K.block(c * p, c * p, p, p) = B1;
    for (Index r = 0; r < q; ++r) {
      K.block(r * p, c * p, p, p) -= B2(c, r) * Matrix::Identity(p, p);
    }
  }
  Vector rhs(p * q);
  for (Index c = 0; c < q; ++c) rhs.segment(c * p, p) = -T12.col(c);
  Vector x = K.fullPivLu().solve(rhs);
  Matrix X(p, q);
  for (Index c = 0; c < q; ++c) X.col(c) = x.segment(c * p, p);
  return X;
}

// Swap two adjacent diagonal blocks (sizes p then q, starting at row `off`)
// of an upper quasi-triangular S by an orthogonal similarity, accumulated
// into U.  Standard reordering step: the invariant subspace of the trailing
// block is rotated to the front.
void swap_adjacent_blocks(Matrix& S, Matrix& U, Index off, Index p, Index q) {
  const Index w = p + q;
  const Matrix B1 = S.block(off, off, p, p);
  const Matrix B2 = S.block(off + p, off + p, q, q);
  const Matrix T12 = S.block(off, off + p, p, q);

  const Matrix X = small_sylvester_shift(B1, B2, T12);
  Matrix Z(w, q);
  Z.topRows(p) = X;
  Z.bottomRows(q) = Matrix::Identity(q, q);
  Eigen::HouseholderQR<Matrix> qr(Z);
  const Matrix V = qr.householderQ();

  S.middleCols(off, w) = (S.middleCols(off, w) * V).eval();
  S.middleRows(off, w) = (V.transpose() * S.middleRows(off, w)).eval();
  U.middleCols(off, w) = (U.middleCols(off, w) * V).eval();
  // The similarity leaves only rounding noise below the swapped blocks.
  S.block(off + q, off, p, q).setZero();
}

std::vector<Complex> plain_schur_eigenvalues(const Matrix& M, const char* what) {
  Eigen::RealSchur<Matrix> rs(M);
  if (rs.info() != Eigen::Success) {
    throw QrConvergenceError(std::string(what) + ": QR iteration failed to converge");
  }
  return block_eigenvalue_list(diagonal_blocks(rs.matrixT(), 0.0));
}

}  // namespace

Matrix matrix_exponential(const Matrix& M) {
  require_square(M, "matrix_exponential");
  Matrix E = M.exp();
  if (!E.allFinite()) {
    throw HorizonOverflowError("matrix_exponential: horizon too large for direct exponential",
                               0.0);
  }
  return E;
}

OrderedSchur ordered_real_schur(const Matrix& A, double zero_tol) {
  require_square(A, "ordered_real_schur");
  if (!std::isfinite(zero_tol) || zero_tol < 0.0) {
    throw InvalidInputError("ordered_real_schur: zero_tol must be finite and nonnegative");
  }
  const Index n = A.rows();
  const double scale = A.norm();
  const double threshold = zero_tol * scale;

  // Schur form of A^T; transposing at the end yields a block lower
  // triangular factor for A itself.
  Eigen::RealSchur<Matrix> rs(A.transpose());
  if (rs.info() != Eigen::Success) {
    throw QrConvergenceError("ordered_real_schur: QR iteration failed to converge");
  }
  Matrix S = rs.matrixT();
  Matrix U = rs.matrixU();

  std::vector<DiagBlock> blocks = diagonal_blocks(S, threshold);

  // Stable insertion sort on the class rank; each adjacent exchange is an
  // orthogonal similarity, so eigenvalues ride along with their blocks.
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && blocks[j - 1].rank > blocks[j].rank) {
      Index off = 0;
      for (std::size_t t = 0; t + 1 < j; ++t) off += blocks[t].size;
      swap_adjacent_blocks(S, U, off, blocks[j - 1].size, blocks[j].size);
      std::swap(blocks[j - 1], blocks[j]);
      --j;
    }
  }

  OrderedSchur out;
  out.factorization.orthogonal = U;
  out.factorization.quasi_triangular = S.transpose();
  out.factorization.block_eigenvalues = block_eigenvalue_list(blocks);
  for (const auto& b : blocks) out.factorization.block_sizes.push_back(b.size);

  SpectrumClassification cls;
  cls.scale = scale;
  cls.zero_tol = zero_tol;
  for (const auto& b : blocks) {
    const SpectralClass c = (b.rank == 0)   ? SpectralClass::Negative
                            : (b.rank == 2) ? SpectralClass::Positive
                                            : SpectralClass::Zero;
    cls.eigenvalues.push_back({b.e1, c});
    if (b.size == 2) cls.eigenvalues.push_back({b.e2, c});
    const int count = b.size;
    if (c == SpectralClass::Negative) cls.n_minus += count;
    if (c == SpectralClass::Zero) cls.n_zero += count;
    if (c == SpectralClass::Positive) cls.n_plus += count;
  }
  out.classification = std::move(cls);

  // Postconditions: U orthogonal, A reconstructed from the factors.
  const double orth = (U.transpose() * U - Matrix::Identity(n, n)).norm();
  if (orth > 1e-10 * static_cast<double>(n)) {
    throw NumericalError("ordered_real_schur: orthogonality residual " + std::to_string(orth));
  }
  const double rec =
      (U * out.factorization.quasi_triangular * U.transpose() - A).norm();
  if (scale > 0.0 && rec > 1e-10 * scale) {
    throw NumericalError("ordered_real_schur: reconstruction residual " + std::to_string(rec));
  }
  return out;
}

Matrix solve_sylvester(const Matrix& C1, const Matrix& C2, const Matrix& P, double zero_tol) {
  require_square(C1, "solve_sylvester");
  require_square(C2, "solve_sylvester");
  require_finite(P, "solve_sylvester");
  const Index l = C1.rows();
  const Index m = C2.rows();
  if (P.rows() != l || P.cols() != m) {
    throw InvalidInputError("solve_sylvester: right-hand side must be " + std::to_string(l) +
                            "x" + std::to_string(m));
  }

  Eigen::RealSchur<Matrix> rs1(C1);
  if (rs1.info() != Eigen::Success) {
    throw QrConvergenceError("solve_sylvester: QR iteration failed to converge");
  }
  Eigen::RealSchur<Matrix> rs2(C2.transpose());
  if (rs2.info() != Eigen::Success) {
    throw QrConvergenceError("solve_sylvester: QR iteration failed to converge");
  }
  const Matrix S1 = rs1.matrixT();  // upper quasi-triangular
  const Matrix U1 = rs1.matrixU();
  const Matrix S2 = rs2.matrixT();  // Schur factor of C2^T
  const Matrix U2 = rs2.matrixU();

  const std::vector<DiagBlock> b1 = diagonal_blocks(S1, 0.0);
  const std::vector<DiagBlock> b2 = diagonal_blocks(S2, 0.0);

  // Unique solvability: no eigenvalue of C1 may cancel one of C2.
  const double sep_tol = zero_tol * (C1.norm() + C2.norm());
  for (const Complex& li : block_eigenvalue_list(b1)) {
    for (const Complex& mj : block_eigenvalue_list(b2)) {
      if (std::abs(li + mj) <= sep_tol) {
        throw SingularSpectrumError(
            "solve_sylvester: eigenvalue pair sums to zero within tolerance (" +
            std::to_string(li.real()) + (li.imag() < 0 ? "-" : "+") +
            std::to_string(std::abs(li.imag())) + "i and " + std::to_string(mj.real()) +
            (mj.imag() < 0 ? "-" : "+") + std::to_string(std::abs(mj.imag())) + "i)");
      }
    }
  }

  // Transformed equation S1*Yt + Yt*S2^T = Q with Q = -U1^T P U2; S2^T is
  // block lower triangular, so sweep column blocks right to left and row
  // blocks bottom to top, solving one small Kronecker system per cell.
  const Matrix Q = -(U1.transpose() * P * U2);
  Matrix Yt = Matrix::Zero(l, m);

  std::vector<Index> off1(b1.size() + 1, 0), off2(b2.size() + 1, 0);
  for (std::size_t r = 0; r < b1.size(); ++r) off1[r + 1] = off1[r] + b1[r].size;
  for (std::size_t c = 0; c < b2.size(); ++c) off2[c + 1] = off2[c] + b2[c].size;

  for (std::size_t c = b2.size(); c-- > 0;) {
    const Index oc = off2[c], sc = b2[c].size;
    for (std::size_t r = b1.size(); r-- > 0;) {
      const Index orr = off1[r], sr = b1[r].size;
      Matrix rhs = Q.block(orr, oc, sr, sc);
      if (off1[r + 1] < l) {
        rhs -= S1.block(orr, off1[r + 1], sr, l - off1[r + 1]) *
               Yt.block(off1[r + 1], oc, l - off1[r + 1], sc);
      }
      if (off2[c + 1] < m) {
        rhs -= Yt.block(orr, off2[c + 1], sr, m - off2[c + 1]) *
               S2.block(oc, off2[c + 1], sc, m - off2[c + 1]).transpose();
      }
      // Solve S1_rr * X + X * (S2_cc)^T = rhs.
      const Matrix D1 = S1.block(orr, orr, sr, sr);
      const Matrix D2t = S2.block(oc, oc, sc, sc).transpose();
      Yt.block(orr, oc, sr, sc) = small_sylvester_shift(D1, -D2t, -rhs);
    }
  }

  Matrix Y = U1 * Yt * U2.transpose();

  const double res = (C1 * Y + Y * C2 + P).norm();
  const double bound = 1e-10 * (C1.norm() + C2.norm()) * Y.norm() + 1e-12 * P.norm();
  if (res > bound) {
    throw NumericalError("solve_sylvester: residual " + std::to_string(res) +
                         " exceeds bound " + std::to_string(bound));
  }
  return Y;
}

Matrix solve_lyapunov(const Matrix& C, const Matrix& P, double zero_tol) {
  require_square(C, "solve_lyapunov");
  require_square(P, "solve_lyapunov");
  if (C.rows() != P.rows()) {
    throw InvalidInputError("solve_lyapunov: dimension mismatch");
  }
  if ((P - P.transpose()).norm() > 1e-10 * std::max(P.norm(), 1.0)) {
    throw InvalidInputError("solve_lyapunov: right-hand side must be symmetric");
  }
  const Matrix Ps = 0.5 * (P + P.transpose());

  const double scale = C.norm();
  double max_re = -std::numeric_limits<double>::infinity();
  for (const Complex& e : plain_schur_eigenvalues(C, "solve_lyapunov")) {
    max_re = std::max(max_re, e.real());
  }
  if (scale == 0.0 || max_re > -zero_tol * scale) {
    throw NotHurwitzError("solve_lyapunov: coefficient matrix is not Hurwitz (max Re = " +
                          std::to_string(max_re) + ")");
  }

  Matrix Y = solve_sylvester(C, C.transpose(), Ps, zero_tol);
  Y = 0.5 * (Y + Y.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> esP(Ps);
  if (esP.eigenvalues().minCoeff() >= -1e-10 * Ps.norm()) {
    Eigen::SelfAdjointEigenSolver<Matrix> esY(Y);
    if (esY.eigenvalues().minCoeff() < -1e-10 * Y.norm()) {
      throw NumericalError("solve_lyapunov: solution lost positive semidefiniteness");
    }
  }
  return Y;
}

Index numerical_rank(const Matrix& M, double rel_tol) {
  require_finite(M, "numerical_rank");
  if (!std::isfinite(rel_tol) || rel_tol < 0.0) {
    throw InvalidInputError("numerical_rank: rel_tol must be finite and nonnegative");
  }
  Eigen::JacobiSVD<Matrix> svd(M);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double smax = sv(0);
  if (smax <= 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * smax) ++r;
  }
  return r;
}

}  // namespace ctrlscore
