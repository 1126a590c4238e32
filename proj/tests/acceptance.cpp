// Acceptance gate: one check per release criterion, one [PASS]/[FAIL] line
// each, with measured values.  The process exit code is the number of
// failing criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ctrlscore/diagnostics.hpp"
#include "ctrlscore/gramian.hpp"
#include "ctrlscore/network.hpp"
#include "ctrlscore/scoring.hpp"
#include "oracles.hpp"

namespace {

using namespace ctrlscore;
using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.3e", x);
  return b;
}

std::string fix2(double x) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.2f", x);
  return b;
}

// Reference allocations for the 10-node demo network.  Rows are nodes.
const double kInfVcs[10] = {0.07329, 0.10104, 0.10871, 0.08634, 0.04490,
                            0.06091, 0.24967, 0.04220, 0.16686, 0.06631};
const double kInfAecs[10] = {0.17428, 0.11408, 0.12174, 0.10610, 0.09275,
                             0.13433, 0.09233, 0.06901, 0.00000, 0.09538};
// Columns are the horizons 0.01, 1, 1000, 10000.
const double kVcsCols[10][4] = {
    {0.10000, 0.09968, 0.07335, 0.07327}, {0.10000, 0.10000, 0.10112, 0.10108},
    {0.10000, 0.10000, 0.10876, 0.10874}, {0.10000, 0.10000, 0.08638, 0.08636},
    {0.10000, 0.09967, 0.04556, 0.04499}, {0.10000, 0.09935, 0.06074, 0.06071},
    {0.10000, 0.10131, 0.24929, 0.24952}, {0.10000, 0.09967, 0.04231, 0.04221},
    {0.10000, 0.10033, 0.16614, 0.16674}, {0.10000, 0.10000, 0.06636, 0.06632}};
const double kAecsCols[10][4] = {
    {0.10000, 0.10927, 0.17127, 0.17281}, {0.10000, 0.10000, 0.11333, 0.11364},
    {0.10000, 0.10000, 0.12054, 0.12093}, {0.10000, 0.10000, 0.10584, 0.10610},
    {0.10000, 0.09978, 0.09075, 0.09230}, {0.10000, 0.10905, 0.13350, 0.13383},
    {0.10000, 0.09128, 0.09257, 0.09275}, {0.10000, 0.09982, 0.06947, 0.06945},
    {0.10000, 0.09982, 0.00703, 0.00234}, {0.10000, 0.09998, 0.09571, 0.09586}};
const double kHorizons[4] = {0.01, 1.0, 1000.0, 10000.0};

Matrix fixture_matrix() { return build_laplacian_dynamics(fixture_fig2()).A; }

double max_abs_gap(const Allocation& a, const double* ref) {
  double g = 0.0;
  for (Index i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - ref[i]));
  return g;
}

double max_abs_gap(const Allocation& a, const Allocation& b) {
  double g = 0.0;
  for (Index i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

bool criterion1(std::string& detail) {
  const auto t0 = Clock::now();
  const ScoreReport rep = score_infinite(fixture_matrix(), ObjectiveKind::LogDet);
  const double secs = seconds_since(t0);
  const double dev = max_abs_gap(rep.allocation, kInfVcs);
  detail = "max node deviation " + sci(dev) + ", " + fix2(secs) + " s";
  return rep.converged && dev <= 2e-3 && secs < 5.0;
}

bool criterion2(std::string& detail) {
  const auto t0 = Clock::now();
  const ScoreReport rep = score_infinite(fixture_matrix(), ObjectiveKind::TraceInverse);
  const double secs = seconds_since(t0);
  const double dev = max_abs_gap(rep.allocation, kInfAecs);
  const double node9 = rep.allocation[8];
  detail = "max node deviation " + sci(dev) + ", node 9 = " + sci(node9) + ", " + fix2(secs) +
           " s";
  return rep.converged && dev <= 2e-3 && node9 <= 1e-4 && secs < 5.0;
}

bool criterion3(std::string& detail) {
  const auto t0 = Clock::now();
  const Matrix A = fixture_matrix();
  double worst = 0.0;
  std::string worst_where = "none";
  double worst_uniform = 0.0;
  bool ok = true;
  for (int k = 0; k < 2; ++k) {
    const ObjectiveKind kind = k == 0 ? ObjectiveKind::LogDet : ObjectiveKind::TraceInverse;
    for (int c = 0; c < 4; ++c) {
      const ScoreReport rep = score_finite(A, kHorizons[c], kind);
      ok = ok && rep.converged;
      for (Index i = 0; i < 10; ++i) {
        const double ref = k == 0 ? kVcsCols[i][c] : kAecsCols[i][c];
        const double dev = std::abs(rep.allocation[i] - ref);
        if (dev > worst) {
          worst = dev;
          worst_where = std::string(k == 0 ? "vcs" : "aecs") + " T=" + sci(kHorizons[c]) +
                        " node " + std::to_string(i + 1);
        }
        if (c == 0) {
          worst_uniform = std::max(worst_uniform, std::abs(rep.allocation[i] - 0.1));
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  detail = "worst deviation " + sci(worst) + " at " + worst_where + ", T=0.01 vs uniform " +
           sci(worst_uniform) + ", " + fix2(secs) + " s";
  return ok && worst <= 2e-3 && worst_uniform <= 1e-4 && secs < 60.0;
}

bool criterion4(std::string& detail) {
  const Matrix A = fixture_matrix();
  const double horizons[3] = {1.0, 1000.0, 10000.0};
  bool ok = true;
  std::string parts;
  for (int k = 0; k < 2; ++k) {
    const ObjectiveKind kind = k == 0 ? ObjectiveKind::LogDet : ObjectiveKind::TraceInverse;
    const Allocation p_inf = score_infinite(A, kind).allocation;
    double prev = 0.0;
    double last = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double g = max_abs_gap(score_finite(A, horizons[c], kind).allocation, p_inf);
      if (c > 0 && g >= prev) ok = false;
      prev = g;
      last = g;
      parts += (c == 0 ? std::string(k == 0 ? "vcs " : "; aecs ") : std::string(" > ")) + sci(g);
    }
    if (last > 1.5e-3) ok = false;
  }
  detail = parts + "; bound 1.5e-03 at T=10000";
  return ok;
}

bool criterion5(std::string& detail) {
  const SpectralSplit split = block_diagonalize(fixture_matrix());
  const ModalGramianSet mg = modal_gramians(split);
  const Allocation p = Allocation::uniform(10);
  const Matrix limit = assemble(mg, p);
  const double horizons[4] = {10.0, 100.0, 1000.0, 2000.0};
  bool decreasing = true;
  double prev = 0.0;
  double last = 0.0;
  std::string parts;
  for (int c = 0; c < 4; ++c) {
    const double g = (scaled_finite_gramian(split, p, horizons[c]) - limit).norm();
    if (c > 0 && g >= prev) decreasing = false;
    prev = g;
    last = g;
    parts += (c == 0 ? "gaps " : " > ") + sci(g);
  }
  detail = parts + "; bound 1e-03 at T=2000";
  return decreasing && last <= 1e-3;
}

bool criterion6(std::string& detail) {
  const Matrix A = fixture_matrix();
  const ScoreReport rep = score_infinite(A, ObjectiveKind::TraceInverse);
  const Index rank = controllability_rank(A, rep.allocation);
  detail = "rank " + std::to_string(rank) + " of 10";
  return rank == 9;
}

bool criterion7(std::string& detail) {
  Matrix A(2, 2);
  A << 0, 1, 1, 0;
  const SpectralSplit split = block_diagonalize(A);
  const ModalGramianSet mg = modal_gramians(split);
  bool ok = mg.n_minus == 1 && mg.v_minus.size() == 2;
  double vdev = 1.0;
  if (ok) {
    vdev = std::max(std::abs(mg.v_minus[0](0, 0) - 0.25), std::abs(mg.v_minus[1](0, 0) - 0.25));
    ok = vdev <= 1e-12;
  }

  // Both infinite-horizon objectives are flat along the simplex edge.
  const std::vector<Matrix> family = full_family(mg);
  double spread_logdet = 0.0;
  double spread_trace = 0.0;
  for (int k = 0; k < 2; ++k) {
    const ScoreProblem prob =
        make_score_problem(family, k == 0 ? ObjectiveKind::LogDet : ObjectiveKind::TraceInverse);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int g = 0; g < 100; ++g) {
      const double t = (g + 0.5) / 100.0;
      Vector q(2);
      q << t, 1.0 - t;
      const double f = objective(prob, Allocation(q));
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    (k == 0 ? spread_logdet : spread_trace) = hi - lo;
  }
  ok = ok && spread_logdet < 1e-10 && spread_trace < 1e-10;

  const UniquenessCertificates certs = uniqueness_certificates(split);
  ok = ok && certs.rank_aecs == 1 && !certs.aecs_certified;

  bool no_witness = true;
  for (const double T : {0.5, 1.0, 10.0}) {
    if (theta_prime_check(split.classification, T)) no_witness = false;
  }
  ok = ok && no_witness;

  detail = "stable modal values dev " + sci(vdev) + ", objective spreads " + sci(spread_logdet) +
           "/" + sci(spread_trace) + ", rank_aecs " + std::to_string(certs.rank_aecs) +
           (certs.aecs_certified ? " (certified)" : " (not certified)") +
           (no_witness ? ", no exceptional horizons" : ", exceptional horizon found");
  return ok;
}

bool criterion8(std::string& detail) {
  std::mt19937_64 rng(20240817u);

  // Sylvester and Lyapunov solves against the Kronecker-product oracle.
  double worst_syl = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const int m = (n + rep) % 6 + 1;
      const Matrix C1 = oracles::random_stable_matrix(n, rng);
      const Matrix C2 = oracles::random_stable_matrix(m, rng);
      Matrix P(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          P(i, j) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      const Matrix X = solve_sylvester(C1, C2, P);
      const Matrix X0 = oracles::sylvester_kron(C1, C2, P);
      worst_syl = std::max(worst_syl, (X - X0).norm() / std::max(1.0, X0.norm()));

      const Matrix C = oracles::random_stable_matrix(n, rng);
      const Matrix S = oracles::random_matrix(n, rng);
      const Matrix Q = S * S.transpose();
      const Matrix Y = solve_lyapunov(C, Q);
      const Matrix Y0 = oracles::sylvester_kron(C, Matrix(C.transpose()), Q);
      worst_syl = std::max(worst_syl, (Y - Y0).norm() / std::max(1.0, Y0.norm()));
    }
  }
  const bool ok_syl = worst_syl <= 1e-9;

  // Analytic gradients against central finite differences, 100 interior
  // points for each of the four problem variants.
  const Matrix A = fixture_matrix();
  const std::vector<Matrix> inf_family = full_family(modal_gramians(block_diagonalize(A)));
  const std::vector<Matrix> fin_family = finite_gramian_set(A, 1.0).gramians;
  double worst_grad = 0.0;
  for (int variant = 0; variant < 4; ++variant) {
    const bool log_det = variant % 2 == 0;
    const std::vector<Matrix>& fam = variant < 2 ? inf_family : fin_family;
    const ScoreProblem prob =
        make_score_problem(fam, log_det ? ObjectiveKind::LogDet : ObjectiveKind::TraceInverse);
    for (int k = 0; k < 100; ++k) {
      const Vector q = oracles::random_interior_point(10, rng);
      const Vector g = gradient(prob, Allocation(q));
      const Vector fd = oracles::fd_gradient(fam, log_det, q, 1e-6);
      const double rel = (g - fd).lpNorm<Eigen::Infinity>() /
                         std::max(1.0, fd.lpNorm<Eigen::Infinity>());
      worst_grad = std::max(worst_grad, rel);
    }
  }
  const bool ok_grad = worst_grad <= 1e-5;

  // Simplex projection against the brute-force active-set solution on a
  // 4-dimensional grid.
  double worst_proj = 0.0;
  const int steps = 17;
  Vector x(4);
  for (int a = 0; a < steps; ++a) {
    x[0] = -2.0 + 0.25 * a;
    for (int b = 0; b < steps; ++b) {
      x[1] = -2.0 + 0.25 * b;
      for (int c = 0; c < steps; ++c) {
        x[2] = -2.0 + 0.25 * c;
        for (int d = 0; d < steps; ++d) {
          x[3] = -2.0 + 0.25 * d;
          const Allocation p = project_simplex(x);
          const Vector q = oracles::simplex_projection(x);
          worst_proj = std::max(worst_proj, (p.vec() - q).lpNorm<Eigen::Infinity>());
        }
      }
    }
  }
  const bool ok_proj = worst_proj <= 1e-12;

  // Monotone objective traces on a batch of solver runs.
  bool ok_trace = true;
  std::vector<ScoreReport> runs;
  runs.push_back(score_infinite(A, ObjectiveKind::LogDet));
  runs.push_back(score_infinite(A, ObjectiveKind::TraceInverse));
  runs.push_back(score_finite(A, 1.0, ObjectiveKind::LogDet));
  runs.push_back(score_finite(A, 1.0, ObjectiveKind::TraceInverse));
  {
    Matrix E(2, 2);
    E << 0, 1, 1, 0;
    runs.push_back(score_infinite(E, ObjectiveKind::LogDet));
  }
  for (const ScoreReport& run : runs) {
    for (size_t k = 0; k + 1 < run.objective_trace.size(); ++k) {
      const double slack = 1e-12 * std::max(1.0, std::abs(run.objective_trace[k]));
      if (run.objective_trace[k + 1] > run.objective_trace[k] + slack) ok_trace = false;
    }
  }

  // Relabeling the nodes relabels the scores.
  const int perm[10] = {3, 7, 0, 9, 4, 1, 8, 2, 6, 5};
  Matrix Ap(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) Ap(perm[i], perm[j]) = A(i, j);
  double worst_perm = 0.0;
  for (int variant = 0; variant < 3; ++variant) {
    const ObjectiveKind kind = variant == 1 ? ObjectiveKind::TraceInverse : ObjectiveKind::LogDet;
    const Allocation base = variant < 2 ? score_infinite(A, kind).allocation
                                        : score_finite(A, 1.0, kind).allocation;
    const Allocation moved = variant < 2 ? score_infinite(Ap, kind).allocation
                                         : score_finite(Ap, 1.0, kind).allocation;
    for (int i = 0; i < 10; ++i) {
      worst_perm = std::max(worst_perm, std::abs(moved[perm[i]] - base[i]));
    }
  }
  const bool ok_perm = worst_perm <= 1e-6;

  // Exponential-doubling Gramians against adaptive Simpson quadrature.
  double worst_quad = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix As = oracles::random_stable_matrix(6, rng);
    const Matrix S = oracles::random_matrix(6, rng);
    const Matrix B = S * S.transpose();
    const Matrix W = finite_gramian(As, B, 2.0);
    const Matrix W0 = oracles::simpson_gramian(As, B, 2.0, 1e-12);
    worst_quad = std::max(worst_quad, (W - W0).norm() / W0.norm());
  }
  const bool ok_quad = worst_quad <= 1e-8;

  detail = "sylvester " + sci(worst_syl) + ", gradient " + sci(worst_grad) + ", projection " +
           sci(worst_proj) + ", traces " + (ok_trace ? "monotone" : "NOT monotone") +
           ", relabeling " + sci(worst_perm) + ", quadrature " + sci(worst_quad);
  return ok_syl && ok_grad && ok_proj && ok_trace && ok_perm && ok_quad;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    bool (*fn)(std::string&);
  };
  const std::vector<Entry> entries = {
      {1, "infinite-horizon volumetric scores match the reference values", &criterion1},
      {2, "infinite-horizon average-energy scores match the reference values", &criterion2},
      {3, "finite-horizon columns match the reference values", &criterion3},
      {4, "finite-horizon optima approach the infinite-horizon optimum", &criterion4},
      {5, "scaled Gramian approaches its block-diagonal limit", &criterion5},
      {6, "controllability rank at the average-energy optimum is 9", &criterion6},
      {7, "symmetric two-node example matches its closed-form values", &criterion7},
      {8, "property suites (oracles, gradients, projection, invariances)", &criterion8},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    std::string detail;
    bool ok = false;
    try {
      ok = e.fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", e.id, e.label,
                detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%zu of %zu criteria passed\n", entries.size() - failures, entries.size());
  return failures;
}
