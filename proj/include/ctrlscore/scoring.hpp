#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrlscore/gramian.hpp"

namespace ctrlscore {

enum class ObjectiveKind { LogDet, TraceInverse };

// Family {G_i} of symmetric positive semidefinite matrices with
// G(p) = sum_i p_i G_i.  The solver minimizes -log det G(p) (LogDet) or
// tr(G(p)^{-1}) (TraceInverse) over the standard simplex.
struct ScoreProblem {
  std::vector<Matrix> family;
  ObjectiveKind kind = ObjectiveKind::LogDet;
};

// Validates: non-empty family of equal square dimensions, each member
// symmetric and positive semidefinite (to 1e-10 relative), and G(p) positive
// definite at the uniform allocation.
ScoreProblem make_score_problem(std::vector<Matrix> family, ObjectiveKind kind);

struct SolveOptions {
  double eps = 1e-8;     // stop when the iterate moves by at most this much
  double sigma = 1e-4;   // sufficient-decrease fraction for the line search
  double rho = 0.5;      // backtracking factor
  double alpha0 = 1.0;   // initial step size per iteration
  long max_iter = 100000;
};

struct ScoreReport {
  explicit ScoreReport(Allocation a) : allocation(std::move(a)) {}

  Allocation allocation;
  double objective = 0.0;
  long iterations = 0;
  std::vector<double> step_sizes;       // accepted step size per iteration
  std::vector<double> objective_trace;  // initial objective, then one entry per
                                        // iteration (non-increasing)
  bool converged = false;
  double terminal_gap = 0.0;            // ||p_k - p_{k+1}|| at the final test
  std::optional<std::string> uniqueness_warning;
};

double objective(const ScoreProblem& prob, const Allocation& p);
Vector gradient(const ScoreProblem& prob, const Allocation& p);

// Euclidean projection onto the standard simplex.
Allocation project_simplex(const Vector& x);

// Largest alpha in {alpha0 * rho^k} whose projected step from p along -grad
// satisfies the sufficient-decrease condition
//   f(c) <= f(p) + sigma * grad . (c - p),  c = project_simplex(p - alpha*grad).
// Throws StagnationError if alpha underflows below 1e-16 first.
double armijo_step(const ScoreProblem& prob, const Allocation& p, const Vector& grad,
                   double sigma = SolveOptions{}.sigma, double rho = SolveOptions{}.rho,
                   double alpha0 = SolveOptions{}.alpha0);

// Projected gradient descent from the uniform allocation.  When the line
// search stagnates at an iterate that is already stationary to within eps,
// the run counts as converged; otherwise StagnationError propagates.
ScoreReport solve(const ScoreProblem& prob, const SolveOptions& opts = {});

// Score the single-node input family of A over [0, T].  Attaches a
// uniqueness warning when T lies (to within the default tolerance) at an
// exceptional horizon of the spectrum of A.
ScoreReport score_finite(const Matrix& A, double T, ObjectiveKind kind,
                         const SolveOptions& opts = {}, const Tolerances& tol = {});

// Score the infinite-horizon family of A: full modal blocks for LogDet,
// stable blocks only for TraceInverse.  Attaches a uniqueness warning when
// the corresponding rank certificate fails.
ScoreReport score_infinite(const Matrix& A, ObjectiveKind kind,
                           const SolveOptions& opts = {}, const Tolerances& tol = {});

}  // namespace ctrlscore
