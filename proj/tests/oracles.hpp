// Self-contained reference implementations used to cross-check the library.
// Everything here is deliberately independent of the code under test: plain
// complex QR iteration for spectra, Kronecker solves for matrix equations,
// Simpson quadrature for integrals, finite differences for gradients, and
// exhaustive subset enumeration for simplex projections.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace oracles {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Spectra: complex Householder-Hessenberg reduction followed by explicit
// Wilkinson-shifted QR steps with deflation.
// ---------------------------------------------------------------------------

inline std::vector<Complex> eigenvalues(const Matrix& A_in) {
  const int n = static_cast<int>(A_in.rows());
  MatrixC H = A_in.cast<Complex>();

  for (int k = 0; k + 2 < n; ++k) {
    VectorC x = H.block(k + 1, k, n - k - 1, 1);
    const double xn = x.norm();
    if (xn <= 1e-300) continue;
    const double x0n = std::abs(x(0));
    const Complex phase = (x0n > 0.0) ? x(0) / x0n : Complex(1.0, 0.0);
    const Complex alpha = -phase * xn;
    VectorC v = x;
    v(0) -= alpha;
    const double vn = v.norm();
    if (vn <= 1e-300) continue;
    v /= vn;
    H.block(k + 1, 0, n - k - 1, n) -=
        (2.0 * v) * (v.adjoint() * H.block(k + 1, 0, n - k - 1, n)).eval();
    H.block(0, k + 1, n, n - k - 1) -=
        (H.block(0, k + 1, n, n - k - 1) * v).eval() * (2.0 * v.adjoint());
  }
  for (int c = 0; c < n; ++c) {
    for (int r = c + 2; r < n; ++r) H(r, c) = Complex(0.0, 0.0);
  }

  std::vector<Complex> out;
  int hi = n - 1;
  long iters = 0;
  const long max_iters = 1000L * n + 1000;
  const auto negligible = [&H](int k) {
    return std::abs(H(k, k - 1)) <=
           1e-15 * (std::abs(H(k - 1, k - 1)) + std::abs(H(k, k)) + 1e-300);
  };

  while (hi >= 0) {
    if (hi == 0) {
      out.push_back(H(0, 0));
      break;
    }
    if (negligible(hi)) {
      out.push_back(H(hi, hi));
      --hi;
      continue;
    }
    if (++iters > max_iters) {  // defensive: harvest the diagonal as-is
      for (int k = 0; k <= hi; ++k) out.push_back(H(k, k));
      break;
    }
    int lo = hi - 1;
    while (lo > 0 && !negligible(lo)) --lo;

    // Wilkinson shift: the eigenvalue of the trailing 2x2 closest to H(hi,hi).
    const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
    const Complex c = H(hi, hi - 1), d = H(hi, hi);
    const Complex tr = a + d, det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    Complex mu = (std::abs(l1 - d) <= std::abs(l2 - d)) ? l1 : l2;
    if (iters % 43 == 0) {
      mu = d + Complex(1.5 * std::abs(H(hi, hi - 1)), 0.0);  // exceptional shift
    }

    const int m = hi - lo + 1;
    MatrixC W = H.block(lo, lo, m, m);
    for (int k = 0; k < m; ++k) W(k, k) -= mu;

    std::vector<double> cs(m - 1);
    std::vector<Complex> sn(m - 1);
    for (int k = 0; k < m - 1; ++k) {
      const Complex f = W(k, k), g = W(k + 1, k);
      const double fn = std::abs(f), gn = std::abs(g);
      double c_;
      Complex s_;
      if (gn <= 1e-300) {
        c_ = 1.0;
        s_ = Complex(0.0, 0.0);
      } else if (fn <= 1e-300) {
        c_ = 0.0;
        s_ = Complex(1.0, 0.0);
      } else {
        const double r = std::hypot(fn, gn);
        c_ = fn / r;
        s_ = (f / fn) * std::conj(g) / r;
      }
      for (int col = k; col < m; ++col) {
        const Complex t1 = W(k, col), t2 = W(k + 1, col);
        W(k, col) = c_ * t1 + s_ * t2;
        W(k + 1, col) = -std::conj(s_) * t1 + c_ * t2;
      }
      cs[k] = c_;
      sn[k] = s_;
    }
    for (int k = 0; k < m - 1; ++k) {
      const int rmax = std::min(k + 1, m - 1);
      for (int row = 0; row <= rmax; ++row) {
        const Complex t1 = W(row, k), t2 = W(row, k + 1);
        W(row, k) = cs[k] * t1 + std::conj(sn[k]) * t2;
        W(row, k + 1) = -sn[k] * t1 + cs[k] * t2;
      }
    }
    for (int k = 0; k < m; ++k) W(k, k) += mu;
    H.block(lo, lo, m, m) = W;
  }
  return out;
}

// Worst pairing distance of two spectra under greedy closest-pair matching.
inline double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  std::vector<bool> ua(n, false), ub(n, false);
  double worst = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ua[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (ub[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    ua[bi] = ub[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

inline double max_real_part(const Matrix& A) {
  double m = -std::numeric_limits<double>::infinity();
  for (const Complex& e : eigenvalues(A)) m = std::max(m, e.real());
  return m;
}

// ---------------------------------------------------------------------------
// Matrix equations via dense Kronecker systems.
// ---------------------------------------------------------------------------

inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

// Solve C1*Y + Y*C2 + P = 0 by vectorization.
inline Matrix sylvester_kron(const Matrix& C1, const Matrix& C2, const Matrix& P) {
  const Eigen::Index l = C1.rows(), m = C2.rows();
  const Matrix K = kron(Matrix::Identity(m, m), C1) +
                   kron(C2.transpose(), Matrix::Identity(l, l));
  Vector rhs(l * m);
  for (Eigen::Index c = 0; c < m; ++c) rhs.segment(c * l, l) = -P.col(c);
  const Vector y = K.fullPivLu().solve(rhs);
  Matrix Y(l, m);
  for (Eigen::Index c = 0; c < m; ++c) Y.col(c) = y.segment(c * l, l);
  return Y;
}

// ---------------------------------------------------------------------------
// Matrix exponential by plain scaled Taylor series.
// ---------------------------------------------------------------------------

inline Matrix taylor_exp(const Matrix& M) {
  const Eigen::Index n = M.rows();
  int squarings = 0;
  double norm = M.norm();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix Ms = M / std::ldexp(1.0, squarings);
  Matrix S = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * Ms / static_cast<double>(k)).eval();
    S += term;
  }
  for (int k = 0; k < squarings; ++k) S = (S * S).eval();
  return S;
}

// ---------------------------------------------------------------------------
// Controllability Gramian int_0^T e^{At} Q e^{A^T t} dt by composite Simpson
// quadrature with a Taylor-stepped propagator, refined until stable.
// ---------------------------------------------------------------------------

inline Matrix simpson_gramian(const Matrix& A, const Matrix& Q, double T,
                              double rel_tol = 1e-10) {
  const Eigen::Index n = A.rows();
  Matrix prev;
  bool have_prev = false;
  for (long half = 32; half <= (1L << 22); half *= 2) {
    const long N = 2 * half;
    const double h = T / static_cast<double>(N);
    int sub = 1;
    while (A.norm() * h / sub > 0.25) sub *= 2;
    Matrix Estep = taylor_exp(A * (h / sub));
    for (int s = 1; s < sub; s *= 2) Estep = (Estep * Estep).eval();

    Matrix P = Matrix::Identity(n, n);
    Matrix S = Q;  // f(0)
    for (long j = 1; j <= N; ++j) {
      P = (Estep * P).eval();
      const Matrix F = P * Q * P.transpose();
      const double w = (j == N) ? 1.0 : ((j % 2 == 1) ? 4.0 : 2.0);
      S += w * F;
    }
    Matrix W = S * (h / 3.0);
    W = 0.5 * (W + W.transpose()).eval();
    if (have_prev && (W - prev).norm() <= rel_tol * std::max(W.norm(), 1e-300)) return W;
    prev = W;
    have_prev = true;
  }
  return prev;
}

// ---------------------------------------------------------------------------
// Objectives straight from a Gramian family (works off the simplex too) and
// their central finite-difference gradients.
// ---------------------------------------------------------------------------

inline double family_objective(const std::vector<Matrix>& fam, bool log_det, const Vector& q) {
  const Eigen::Index d = fam.front().rows();
  Matrix G = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < fam.size(); ++i) G += q(static_cast<Eigen::Index>(i)) * fam[i];
  G = 0.5 * (G + G.transpose()).eval();
  if (log_det) {
    const double det = G.determinant();
    return -std::log(det);
  }
  return G.inverse().trace();
}

inline Vector fd_gradient(const std::vector<Matrix>& fam, bool log_det, const Vector& p,
                          double h = 1e-5) {
  const Eigen::Index n = p.size();
  Vector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector hi = p, lo = p;
    hi(i) += h;
    lo(i) -= h;
    g(i) = (family_objective(fam, log_det, hi) - family_objective(fam, log_det, lo)) / (2.0 * h);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exact simplex projection by enumerating active sets (n <= 20).
// ---------------------------------------------------------------------------

inline Vector simplex_projection(const Vector& x) {
  const int n = static_cast<int>(x.size());
  Vector best = Vector::Zero(n);
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int cnt = 0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        ++cnt;
        sum += x(i);
      }
    }
    const double tau = (sum - 1.0) / cnt;
    Vector p = Vector::Zero(n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (mask & (1u << i)) {
        const double v = x(i) - tau;
        if (v < -1e-13) ok = false;
        p(i) = std::max(v, 0.0);
      } else if (x(i) - tau > 1e-13) {
        ok = false;  // excluded index would want to be active
      }
    }
    if (!ok) continue;
    const double d = (p - x).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = p;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Rank by Gaussian elimination with full pivoting.
// ---------------------------------------------------------------------------

inline int echelon_rank(Matrix M, double rel_tol) {
  const Eigen::Index rows = M.rows(), cols = M.cols();
  const double scale = M.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return 0;
  const double tol = rel_tol * scale;
  int rank = 0;
  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    Eigen::Index pi = k, pj = k;
    double pv = 0.0;
    for (Eigen::Index i = k; i < rows; ++i) {
      for (Eigen::Index j = k; j < cols; ++j) {
        if (std::abs(M(i, j)) > pv) {
          pv = std::abs(M(i, j));
          pi = i;
          pj = j;
        }
      }
    }
    if (pv <= tol) break;
    M.row(k).swap(M.row(pi));
    M.col(k).swap(M.col(pj));
    for (Eigen::Index i = k + 1; i < rows; ++i) {
      const double f = M(i, k) / M(k, k);
      M.row(i).tail(cols - k) -= f * M.row(k).tail(cols - k);
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Deterministic random generators for property tests.
// ---------------------------------------------------------------------------

inline Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = g(rng);
  }
  return M;
}

// Random matrix shifted until strictly Hurwitz with a real margin.
inline Matrix random_stable_matrix(int n, std::mt19937_64& rng) {
  const Matrix M = random_matrix(n, rng);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  return M - (max_real_part(M) + u(rng)) * Matrix::Identity(n, n);
}

inline Vector random_interior_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v / v.sum();
}

}  // namespace oracles
