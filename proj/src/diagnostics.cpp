#include "ctrlscore/diagnostics.hpp"

#include <cmath>
#include <numbers>

namespace ctrlscore {

namespace {

// Column-major vectorization of the outer product v v^T.
Vector self_kron(const Vector& v) {
  const Index m = v.size();
  Vector out(m * m);
  for (Index c = 0; c < m; ++c) out.segment(c * m, m) = v(c) * v;
  return out;
}

}  // namespace

UniquenessCertificates uniqueness_certificates(const SpectralSplit& split) {
  const Index n = split.R_inv.rows();
  const Index nm = split.classification.n_minus;
  const Index n0 = split.classification.n_zero;
  const Index np = split.classification.n_plus;

  const Index rows_vcs = nm * nm + n0 * n0 + np * np;
  Matrix M_vcs(rows_vcs, n);
  for (Index i = 0; i < n; ++i) {
    const ModalVectors mv = modal_vectors(split, i);
    Vector col(rows_vcs);
    col.head(nm * nm) = self_kron(mv.r_minus);
    col.segment(nm * nm, n0 * n0) = self_kron(mv.r_zero);
    col.tail(np * np) = self_kron(mv.r_plus);
    M_vcs.col(i) = col;
  }

  UniquenessCertificates certs;
  certs.rank_vcs = numerical_rank(M_vcs);
  certs.vcs_certified = certs.rank_vcs == n;
  if (nm > 0) {
    certs.rank_aecs = numerical_rank(Matrix(M_vcs.topRows(nm * nm)));
  } else {
    certs.rank_aecs = 0;
  }
  certs.aecs_certified = certs.rank_aecs == n;
  return certs;
}

std::optional<ThetaPrimeWitness> theta_prime_check(const SpectrumClassification& eigs, double T,
                                                   double tol) {
  if (!std::isfinite(T) || T <= 0.0) {
    throw InvalidInputError("theta_prime_check: horizon must be finite and positive");
  }
  if (!std::isfinite(tol) || tol < 0.0) {
    throw InvalidInputError("theta_prime_check: tol must be finite and nonnegative");
  }
  const double threshold = tol * eigs.scale;
  const auto& evs = eigs.eigenvalues;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    for (std::size_t j = i; j < evs.size(); ++j) {
      const Complex s = evs[i].value + evs[j].value;
      if (std::abs(s.real()) > threshold) continue;
      const double theta = std::abs(s.imag());
      if (theta <= threshold) continue;
      // Exceptional when T*theta is a nonzero multiple of 2*pi.
      const double x = T * theta / (2.0 * std::numbers::pi);
      const long ell = std::lround(x);
      if (ell >= 1 && std::abs(x - static_cast<double>(ell)) <= tol) {
        return ThetaPrimeWitness{theta, ell, T};
      }
    }
  }
  return std::nullopt;
}

std::vector<BaselineCentrality> baseline_centralities(const Matrix& A, double T) {
  require_square(A, "baseline_centralities");
  if (!std::isfinite(T) || T <= 0.0) {
    throw InvalidInputError("baseline_centralities: horizon must be finite and positive");
  }
  const Index n = A.rows();
  std::vector<BaselineCentrality> out;
  out.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const Matrix W = finite_gramian(A, i, T);
    Eigen::SelfAdjointEigenSolver<Matrix> es(W, Eigen::EigenvaluesOnly);
    const Vector& lam = es.eigenvalues();  // ascending
    const double lmax = std::max(lam(lam.size() - 1), 0.0);
    const double cutoff = 1e-10 * lmax;
    BaselineCentrality b;
    b.ac = W.trace();
    for (Index k = 0; k < lam.size(); ++k) {
      if (lam(k) > cutoff) {
        b.vce += std::log(lam(k));
        b.ace -= 1.0 / lam(k);
        b.rank += 1;
      }
    }
    out.push_back(b);
  }
  return out;
}

Index controllability_rank(const Matrix& A, const Allocation& p) {
  require_square(A, "controllability_rank");
  const Index n = A.rows();
  if (p.size() != n) {
    throw InvalidInputError("controllability_rank: allocation size mismatch");
  }
  const Matrix B = Matrix(p.vec().array().sqrt().matrix().asDiagonal());
  Matrix K(n, n * n);
  Matrix block = B;
  for (Index j = 0; j < n; ++j) {
    K.middleCols(j * n, n) = block;
    if (j + 1 < n) block = (A * block).eval();
  }
  return numerical_rank(K);
}

}  // namespace ctrlscore
