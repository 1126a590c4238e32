#include "ctrlscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "ctrlscore/diagnostics.hpp"

namespace ctrlscore {

namespace {

constexpr double kStepFloor = 1e-16;

void validate_armijo_params(double sigma, double rho, double alpha0, const char* what) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw InvalidInputError(std::string(what) + ": sigma must lie in (0, 1)");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw InvalidInputError(std::string(what) + ": rho must lie in (0, 1)");
  }
  if (!std::isfinite(alpha0) || alpha0 <= 0.0) {
    throw InvalidInputError(std::string(what) + ": alpha0 must be finite and positive");
  }
}

void validate_options(const SolveOptions& o) {
  if (!std::isfinite(o.eps) || o.eps <= 0.0) {
    throw InvalidInputError("solve: eps must be finite and positive");
  }
  validate_armijo_params(o.sigma, o.rho, o.alpha0, "solve");
  if (o.max_iter < 1) {
    throw InvalidInputError("solve: max_iter must be at least 1");
  }
}

// Cholesky factor of G(p); failure means the weighted sum left the positive
// definite cone.
Eigen::LLT<Matrix> factor(const ScoreProblem& prob, const Allocation& p) {
  const Matrix G = assemble(prob.family, p);
  Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("objective: G(p) is not positive definite");
  }
  return llt;
}

double objective_from_factor(const Eigen::LLT<Matrix>& llt, ObjectiveKind kind) {
  const Matrix& L = llt.matrixLLT();
  if (kind == ObjectiveKind::LogDet) {
    double logdet = 0.0;
    for (Index i = 0; i < L.rows(); ++i) {
      const double d = L(i, i);
      if (!(d > 0.0)) {
        throw NotPositiveDefiniteError("objective: G(p) is not positive definite");
      }
      logdet += std::log(d);
    }
    return -2.0 * logdet;
  }
  // tr(G^{-1}) = ||L^{-1}||_F^2.
  const Index d = L.rows();
  const Matrix Linv =
      llt.matrixL().solve(Matrix::Identity(d, d));
  return Linv.squaredNorm();
}

struct LineSearchResult {
  double alpha = 0.0;
  Allocation candidate;
  double f_candidate = 0.0;
};

// Backtracking projected line search; throws StagnationError at the step floor.
LineSearchResult line_search(const ScoreProblem& prob, const Allocation& p, const Vector& grad,
                             double f_p, double sigma, double rho, double alpha0) {
  double alpha = alpha0;
  while (true) {
    Allocation cand = project_simplex(p.vec() - alpha * grad);
    bool feasible = true;
    double fc = 0.0;
    try {
      fc = objective(prob, cand);
    } catch (const NotPositiveDefiniteError&) {
      feasible = false;  // treat as insufficient decrease and shrink further
    }
    if (feasible && fc <= f_p + sigma * grad.dot(cand.vec() - p.vec())) {
      return {alpha, std::move(cand), fc};
    }
    alpha *= rho;
    if (alpha < kStepFloor) {
      throw StagnationError(
          "armijo_step: step size underflowed below 1e-16 without sufficient decrease");
    }
  }
}

}  // namespace

ScoreProblem make_score_problem(std::vector<Matrix> family, ObjectiveKind kind) {
  if (family.empty()) {
    throw InvalidInputError("make_score_problem: empty family");
  }
  const Index d = family.front().rows();
  if (d < 1) {
    throw InvalidInputError("make_score_problem: family members must be non-empty");
  }
  for (Matrix& G : family) {
    require_square(G, "make_score_problem");
    if (G.rows() != d) {
      throw InvalidInputError("make_score_problem: family members must share one dimension");
    }
    if ((G - G.transpose()).norm() > 1e-10 * std::max(G.norm(), 1.0)) {
      throw InvalidInputError("make_score_problem: family members must be symmetric");
    }
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(G, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(G.norm(), 1.0)) {
      throw InvalidInputError(
          "make_score_problem: family members must be positive semidefinite");
    }
  }
  ScoreProblem prob{std::move(family), kind};
  // The solver starts at the uniform allocation; G there must be invertible.
  factor(prob, Allocation::uniform(static_cast<Index>(prob.family.size())));
  return prob;
}

double objective(const ScoreProblem& prob, const Allocation& p) {
  return objective_from_factor(factor(prob, p), prob.kind);
}

Vector gradient(const ScoreProblem& prob, const Allocation& p) {
  const Eigen::LLT<Matrix> llt = factor(prob, p);
  const Index d = prob.family.front().rows();
  const Index n = static_cast<Index>(prob.family.size());
  Matrix Ginv = llt.solve(Matrix::Identity(d, d));
  Ginv = 0.5 * (Ginv + Ginv.transpose()).eval();

  Vector g(n);
  if (prob.kind == ObjectiveKind::LogDet) {
    // d/dp_i [-log det G(p)] = -tr(G^{-1} G_i)
    for (Index i = 0; i < n; ++i) {
      g(i) = -Ginv.cwiseProduct(prob.family[i]).sum();
    }
  } else {
    // d/dp_i [tr G(p)^{-1}] = -tr(G^{-2} G_i)
    Matrix Ginv2 = Ginv * Ginv;
    Ginv2 = 0.5 * (Ginv2 + Ginv2.transpose()).eval();
    for (Index i = 0; i < n; ++i) {
      g(i) = -Ginv2.cwiseProduct(prob.family[i]).sum();
    }
  }
  return g;
}

Allocation project_simplex(const Vector& x) {
  const Index n = x.size();
  if (n < 1) {
    throw InvalidInputError("project_simplex: dimension must be positive");
  }
  if (!x.allFinite()) {
    throw InvalidInputError("project_simplex: non-finite entries");
  }
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      tau = candidate;
    }
  }
  Vector p = (x.array() - tau).cwiseMax(0.0);
  // Guard the simplex-sum tolerance against accumulated rounding.
  const double s = p.sum();
  if (s <= 0.0) {
    throw NumericalError("project_simplex: projection collapsed to zero");
  }
  p /= s;
  return Allocation(std::move(p));
}

double armijo_step(const ScoreProblem& prob, const Allocation& p, const Vector& grad,
                   double sigma, double rho, double alpha0) {
  validate_armijo_params(sigma, rho, alpha0, "armijo_step");
  if (grad.size() != p.size()) {
    throw InvalidInputError("armijo_step: gradient size mismatch");
  }
  const double f_p = objective(prob, p);
  return line_search(prob, p, grad, f_p, sigma, rho, alpha0).alpha;
}

ScoreReport solve(const ScoreProblem& prob, const SolveOptions& opts) {
  validate_options(opts);
  const Index n = static_cast<Index>(prob.family.size());
  Allocation p = Allocation::uniform(n);
  double f = objective(prob, p);

  ScoreReport rep(p);
  rep.objective = f;
  rep.objective_trace.push_back(f);

  for (long k = 0; k < opts.max_iter; ++k) {
    const Vector g = gradient(prob, p);
    std::optional<LineSearchResult> step;
    try {
      step = line_search(prob, p, g, f, opts.sigma, opts.rho, opts.alpha0);
    } catch (const StagnationError&) {
      // The backtracking floor was reached.  If even a floor-sized projected
      // step no longer moves the iterate beyond the convergence tolerance,
      // the point is stationary and the run has converged; otherwise the
      // stagnation is genuine.
      const Allocation floor_cand = project_simplex(p.vec() - kStepFloor * g);
      const double gap = (floor_cand.vec() - p.vec()).norm();
      if (gap <= opts.eps) {
        rep.allocation = p;
        rep.objective = f;
        rep.iterations = k;
        rep.converged = true;
        rep.terminal_gap = gap;
        return rep;
      }
      throw;
    }

    const double gap = (step->candidate.vec() - p.vec()).norm();
    p = step->candidate;
    f = step->f_candidate;
    rep.step_sizes.push_back(step->alpha);
    rep.objective_trace.push_back(f);
    rep.iterations = k + 1;
    rep.allocation = p;
    rep.objective = f;
    rep.terminal_gap = gap;
    if (gap <= opts.eps) {
      rep.converged = true;
      return rep;
    }
  }
  rep.converged = false;
  return rep;
}

ScoreReport score_finite(const Matrix& A, double T, ObjectiveKind kind, const SolveOptions& opts,
                         const Tolerances& tol) {
  const FiniteGramianSet set = finite_gramian_set(A, T);
  const ScoreProblem prob = make_score_problem(set.gramians, kind);
  ScoreReport rep = solve(prob, opts);

  const OrderedSchur os = ordered_real_schur(A, tol.zero_tol);
  if (const auto witness = theta_prime_check(os.classification, T)) {
    rep.uniqueness_warning =
        "horizon T = " + std::to_string(T) + " is exceptional: an eigenvalue pair sum i*theta" +
        " with theta = " + std::to_string(witness->theta) + " satisfies T*theta = 2*pi*" +
        std::to_string(witness->ell) + "; the optimum may be non-unique";
  }
  return rep;
}

ScoreReport score_infinite(const Matrix& A, ObjectiveKind kind, const SolveOptions& opts,
                           const Tolerances& tol) {
  const SpectralSplit split = block_diagonalize(A, tol);
  if (kind == ObjectiveKind::TraceInverse && split.classification.n_minus < 1) {
    throw AssumptionError(
        "score_infinite: trace-inverse scoring requires at least one strictly stable "
        "eigenvalue");
  }
  const ModalGramianSet modal = modal_gramians(split);
  const std::vector<Matrix> family =
      (kind == ObjectiveKind::LogDet) ? full_family(modal) : stable_family(modal);
  const ScoreProblem prob = make_score_problem(family, kind);
  ScoreReport rep = solve(prob, opts);

  const UniquenessCertificates certs = uniqueness_certificates(split);
  const bool certified =
      (kind == ObjectiveKind::LogDet) ? certs.vcs_certified : certs.aecs_certified;
  if (!certified) {
    const Index rank = (kind == ObjectiveKind::LogDet) ? certs.rank_vcs : certs.rank_aecs;
    rep.uniqueness_warning = "uniqueness not certified: certificate rank " +
                             std::to_string(rank) + " < " +
                             std::to_string(split.R_inv.rows());
  }
  return rep;
}

}  // namespace ctrlscore
