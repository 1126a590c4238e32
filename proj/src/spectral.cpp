#include "ctrlscore/spectral.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace ctrlscore {

namespace {

std::string format_eigenvalue(const Complex& e) {
  std::ostringstream os;
  os << e.real();
  if (e.imag() != 0.0) {
    os << (e.imag() < 0 ? " - " : " + ") << std::abs(e.imag()) << "i";
  }
  return os.str();
}

}  // namespace

AssumptionReport check_assumptions(const SpectrumClassification& cls, const Matrix& split_diag,
                                   double semisimple_tol) {
  if (!std::isfinite(semisimple_tol) || semisimple_tol < 0.0) {
    throw InvalidInputError("check_assumptions: semisimple_tol must be finite and nonnegative");
  }
  AssumptionReport rep;
  rep.assumption1 = cls.n_minus >= 1;

  const double threshold = cls.zero_tol * cls.scale;
  bool imag_ok = true;
  for (const auto& ce : cls.eigenvalues) {
    if (ce.cls == SpectralClass::Zero && std::abs(ce.value.imag()) > threshold) {
      imag_ok = false;
    }
  }

  const double residual = (split_diag.size() == 0) ? 0.0 : split_diag.norm();
  const bool semisimple_ok = residual <= semisimple_tol * cls.scale;
  rep.assumption2 = imag_ok && semisimple_ok;
  if (!rep.assumption2) {
    // Report each offending zero-class eigenvalue once.  When zero is
    // defective every zero-class eigenvalue is implicated.
    for (const auto& ce : cls.eigenvalues) {
      if (ce.cls != SpectralClass::Zero) continue;
      if (std::abs(ce.value.imag()) > threshold || !semisimple_ok) {
        rep.violating.push_back(ce.value);
      }
    }
  }
  return rep;
}

SpectralSplit block_diagonalize(const Matrix& A, const Tolerances& tol) {
  require_square(A, "block_diagonalize");
  const Index n = A.rows();

  OrderedSchur os = ordered_real_schur(A, tol.zero_tol);
  const int nm = os.classification.n_minus;
  const int n0 = os.classification.n_zero;
  const int np = os.classification.n_plus;

  // Block lower triangular factor: diagonal blocks are the class dynamics,
  // sub-diagonal blocks are the couplings to eliminate.
  const Matrix& T = os.factorization.quasi_triangular;
  const Matrix Am = T.block(0, 0, nm, nm);
  const Matrix A0 = T.block(nm, nm, n0, n0);
  const Matrix Ap = T.block(nm + n0, nm + n0, np, np);
  const Matrix A0m = T.block(nm, 0, n0, nm);
  const Matrix Apm = T.block(nm + n0, 0, np, nm);
  const Matrix Ap0 = T.block(nm + n0, nm, np, n0);

  const AssumptionReport rep = check_assumptions(os.classification, A0, tol.semisimple_tol);
  if (!rep.assumption2) {
    std::string msg =
        "block_diagonalize: spectrum violates the semisimple-zero requirement; offending "
        "eigenvalues:";
    for (const Complex& e : rep.violating) msg += " " + format_eigenvalue(e);
    if (rep.violating.empty()) msg += " (zero block not semisimple)";
    throw AssumptionError(msg);
  }

  // Eliminate the couplings with three Sylvester solves:
  //   A0 X - X Am = -A0m,  Ap X - X A0 = -Ap0,  Ap X - X Am = -(Apm + Ap0 R0m).
  Matrix R0m = Matrix::Zero(n0, nm);
  Matrix Rp0 = Matrix::Zero(np, n0);
  Matrix Rpm = Matrix::Zero(np, nm);
  if (n0 > 0 && nm > 0) R0m = solve_sylvester(A0, -Am, A0m, tol.zero_tol);
  if (np > 0 && n0 > 0) Rp0 = solve_sylvester(Ap, -A0, Ap0, tol.zero_tol);
  if (np > 0 && nm > 0) Rpm = solve_sylvester(Ap, -Am, Matrix(Apm + Ap0 * R0m), tol.zero_tol);

  Matrix R2 = Matrix::Identity(n, n);
  R2.block(nm, 0, n0, nm) = R0m;
  R2.block(nm + n0, 0, np, nm) = Rpm;
  R2.block(nm + n0, nm, np, n0) = Rp0;

  // Closed-form inverse of the unit block lower triangular eliminator.
  Matrix R2inv = Matrix::Identity(n, n);
  R2inv.block(nm, 0, n0, nm) = -R0m;
  R2inv.block(nm + n0, 0, np, nm) = -Rpm + Rp0 * R0m;
  R2inv.block(nm + n0, nm, np, n0) = -Rp0;

  SpectralSplit split;
  split.A = A;
  split.schur = os.factorization;
  split.R = os.factorization.orthogonal * R2;
  split.R_inv = R2inv * os.factorization.orthogonal.transpose();
  split.A_minus = Am;
  split.A_zero = Matrix::Zero(n0, n0);  // deflated: zero is semisimple
  split.A_plus = Ap;
  split.classification = os.classification;
  split.a_zero_residual = (n0 > 0) ? A0.norm() : 0.0;

  const double inv_res = (split.R * split.R_inv - Matrix::Identity(n, n)).norm();
  if (inv_res > 1e-10 * static_cast<double>(n)) {
    throw NumericalError("block_diagonalize: inverse residual " + std::to_string(inv_res));
  }
  Matrix blk = Matrix::Zero(n, n);
  blk.block(0, 0, nm, nm) = Am;
  blk.block(nm + n0, nm + n0, np, np) = Ap;
  const double scale = A.norm();
  const double diag_res = (split.R_inv * A * split.R - blk).norm();
  if (scale > 0.0 && diag_res > 1e-8 * scale) {
    throw NumericalError("block_diagonalize: similarity residual " + std::to_string(diag_res));
  }
  return split;
}

ModalVectors modal_vectors(const SpectralSplit& split, Index i) {
  const Index n = split.R_inv.rows();
  if (i < 0 || i >= n) {
    throw InvalidInputError("modal_vectors: node index out of range");
  }
  const int nm = split.classification.n_minus;
  const int n0 = split.classification.n_zero;
  const int np = split.classification.n_plus;
  const Vector col = split.R_inv.col(i);
  ModalVectors mv;
  mv.r_minus = col.head(nm);
  mv.r_zero = col.segment(nm, n0);
  mv.r_plus = col.tail(np);
  return mv;
}

}  // namespace ctrlscore
