// Command-line interface: score, sweep, and diagnose subcommands over
// networks given as edge lists, weight matrices, or raw system matrices.
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctrlscore/diagnostics.hpp"
#include "ctrlscore/network.hpp"
#include "ctrlscore/scoring.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ctrlscore;

std::string f5(double x) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.5f", x);
  return b;
}

std::string fg(double x) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.17g", x);
  return b;
}

std::string fmt_complex(const Complex& z) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.6f%+.6fi", z.real(), z.imag());
  return b;
}

struct CommonConfig {
  bool fixture = false;
  std::string input;
  std::string input_format = "edge-list";
  std::string dynamics = "laplacian";
  std::string output = "table";
  std::string config_path;
  Tolerances tol;
};

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Applies `key = value` pairs from a config file to options of `cmd` that were
// not given on the command line (the command line wins).  Keys are long option
// names without the leading dashes; blank lines and '#' comments are skipped.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("config: cannot open '" + path + "'");
  }
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trimmed(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'key = value', got '" +
                       text + "'");
    }
    std::string key = trimmed(text.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    std::string value = trimmed(text.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\''))) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": unknown config key '" + key + "'");
    }
    if (op->count() > 0) continue;  // set on the command line or earlier in the file
    if (op->get_expected_min() == 0) {
      // Flag: accept the usual boolean spellings.
      std::string v = value;
      std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
      if (v == "true" || v == "1" || v == "yes" || v == "on") {
        op->add_result("true");
        op->run_callback();
      } else if (!(v == "false" || v == "0" || v == "no" || v == "off")) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": flag '" + key +
                         "' expects a boolean, got '" + value + "'");
      }
    } else {
      op->add_result(value);
      op->run_callback();
    }
  }
}

void add_common(CLI::App* cmd, CommonConfig& c) {
  auto* fixture = cmd->add_flag("--fixture", c.fixture, "Use the built-in 10-node demo network");
  auto* input = cmd->add_option("--input", c.input, "Path to a network or matrix file");
  fixture->excludes(input);
  input->excludes(fixture);
  cmd->add_option("--input-format", c.input_format, "Input file format")
      ->check(CLI::IsMember({"edge-list", "matrix"}))
      ->capture_default_str();
  cmd->add_option("--dynamics", c.dynamics,
                  "laplacian: treat input as a weighted digraph; raw: use the matrix directly")
      ->check(CLI::IsMember({"laplacian", "raw"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--zero-tol", c.tol.zero_tol, "Relative spectral-classification tolerance")
      ->capture_default_str();
  cmd->add_option("--semisimple-tol", c.tol.semisimple_tol,
                  "Relative semisimplicity tolerance for the zero class")
      ->capture_default_str();
  cmd->add_option("--config", c.config_path,
                  "Read defaults from a key=value file (command-line flags win)");
}

void add_solver(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--eps", o.eps, "Stop when the iterate moves by at most this much")
      ->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Armijo sufficient-decrease fraction")
      ->capture_default_str();
  cmd->add_option("--rho", o.rho, "Armijo backtracking factor")->capture_default_str();
  cmd->add_option("--alpha0", o.alpha0, "Initial line-search step size")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
}

SystemMatrix load_system(const CommonConfig& c) {
  if (c.fixture) {
    return build_laplacian_dynamics(fixture_fig2());
  }
  if (c.input.empty()) {
    throw InvalidInputError("no input: pass --fixture or --input PATH");
  }
  if (c.input_format == "edge-list") {
    if (c.dynamics != "laplacian") {
      throw InvalidInputError("raw dynamics requires --input-format matrix");
    }
    return build_laplacian_dynamics(read_edge_list(c.input));
  }
  const Matrix M = read_matrix(c.input);
  if (c.dynamics == "laplacian") {
    return build_laplacian_dynamics(network_from_weight_matrix(M));
  }
  SystemMatrix sys;
  sys.A = M;
  sys.source = "matrix(" + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + ")";
  return sys;
}

ObjectiveKind parse_objective(const std::string& tok) {
  if (tok == "vcs") return ObjectiveKind::LogDet;
  if (tok == "aecs") return ObjectiveKind::TraceInverse;
  throw InvalidInputError("objective must be 'vcs' or 'aecs', got '" + tok + "'");
}

struct Horizon {
  bool infinite = false;
  double T = 0.0;
  std::string token;
};

Horizon parse_horizon(const std::string& tok) {
  Horizon h;
  h.token = tok;
  if (tok == "inf") {
    h.infinite = true;
    return h;
  }
  try {
    size_t pos = 0;
    h.T = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw InvalidInputError("horizon must be 'inf' or a positive real, got '" + tok + "'");
  }
  if (!std::isfinite(h.T) || h.T <= 0.0) {
    throw InvalidInputError("horizon must be 'inf' or a positive real, got '" + tok + "'");
  }
  return h;
}

// ---------------------------------------------------------------------------
// score

json score_json(const ScoreReport& rep, const std::string& objective, const Horizon& horizon,
                const Matrix& A, const Tolerances& tol) {
  json doc;
  doc["command"] = "score";
  doc["objective"] = objective;
  doc["horizon"] = horizon.token;
  doc["nodes"] = rep.allocation.size();
  json alloc = json::array();
  for (Index i = 0; i < rep.allocation.size(); ++i) alloc.push_back(rep.allocation[i]);
  doc["allocation"] = alloc;
  doc["objective_value"] = rep.objective;
  doc["iterations"] = rep.iterations;
  doc["converged"] = rep.converged;
  doc["terminal_gap"] = rep.terminal_gap;
  if (rep.step_sizes.empty()) {
    doc["final_step_size"] = nullptr;
  } else {
    doc["final_step_size"] = rep.step_sizes.back();
  }
  if (horizon.infinite) {
    const UniquenessCertificates c = uniqueness_certificates(block_diagonalize(A, tol));
    doc["uniqueness"] = {{"rank_vcs", c.rank_vcs},
                         {"rank_aecs", c.rank_aecs},
                         {"vcs_certified", c.vcs_certified},
                         {"aecs_certified", c.aecs_certified}};
  } else {
    const OrderedSchur os = ordered_real_schur(A, tol.zero_tol);
    const auto witness = theta_prime_check(os.classification, horizon.T);
    if (witness) {
      doc["exceptional_horizon"] = {{"theta", witness->theta}, {"ell", witness->ell}};
    } else {
      doc["exceptional_horizon"] = nullptr;
    }
  }
  doc["warning"] = rep.uniqueness_warning ? json(*rep.uniqueness_warning) : json(nullptr);
  return doc;
}

void print_score_table(const ScoreReport& rep) {
  std::printf("node  score\n");
  for (Index i = 0; i < rep.allocation.size(); ++i) {
    std::printf("%4ld  %s\n", static_cast<long>(i + 1), f5(rep.allocation[i]).c_str());
  }
  std::printf("\n");
  std::printf("objective = %s\n", fg(rep.objective).c_str());
  std::printf("iterations = %ld\n", rep.iterations);
  std::printf("converged = %s\n", rep.converged ? "yes" : "no");
  std::printf("terminal_gap = %s\n", fg(rep.terminal_gap).c_str());
  if (rep.uniqueness_warning) {
    std::printf("warning: %s\n", rep.uniqueness_warning->c_str());
  }
}

void print_score_csv(const ScoreReport& rep) {
  std::printf("node,score\n");
  for (Index i = 0; i < rep.allocation.size(); ++i) {
    std::printf("%ld,%s\n", static_cast<long>(i + 1), fg(rep.allocation[i]).c_str());
  }
}

int render_score(const ScoreReport& rep, const std::string& objective, const Horizon& horizon,
                 const Matrix& A, const CommonConfig& common) {
  if (common.output == "json") {
    std::printf("%s\n", score_json(rep, objective, horizon, A, common.tol).dump(2).c_str());
  } else if (common.output == "csv") {
    print_score_csv(rep);
  } else {
    print_score_table(rep);
  }
  return rep.converged ? 0 : 3;
}

int do_score(const CommonConfig& common, const SolveOptions& sopts, const std::string& objective,
             const std::string& horizon_tok) {
  const SystemMatrix sys = load_system(common);
  const Horizon horizon = parse_horizon(horizon_tok);
  const ObjectiveKind kind = parse_objective(objective);
  const ScoreReport rep = horizon.infinite
                              ? score_infinite(sys.A, kind, sopts, common.tol)
                              : score_finite(sys.A, horizon.T, kind, sopts, common.tol);
  return render_score(rep, objective, horizon, sys.A, common);
}

// ---------------------------------------------------------------------------
// sweep

int do_sweep(const CommonConfig& common, const SolveOptions& sopts, const std::string& objective,
             const std::vector<std::string>& horizon_toks) {
  if (horizon_toks.empty()) {
    throw InvalidInputError("sweep: at least one horizon is required");
  }
  const SystemMatrix sys = load_system(common);
  const ObjectiveKind kind = parse_objective(objective);

  std::vector<Horizon> horizons;
  horizons.reserve(horizon_toks.size());
  for (const auto& tok : horizon_toks) horizons.push_back(parse_horizon(tok));

  if (horizons.size() == 1) {
    // A one-column sweep is just a score run.
    const Horizon& h = horizons.front();
    const ScoreReport rep = h.infinite ? score_infinite(sys.A, kind, sopts, common.tol)
                                       : score_finite(sys.A, h.T, kind, sopts, common.tol);
    return render_score(rep, objective, h, sys.A, common);
  }

  std::vector<ScoreReport> reports;
  reports.reserve(horizons.size());
  for (const Horizon& h : horizons) {
    reports.push_back(h.infinite ? score_infinite(sys.A, kind, sopts, common.tol)
                                 : score_finite(sys.A, h.T, kind, sopts, common.tol));
  }
  const Index n = reports.front().allocation.size();

  // Gaps against the first infinite column, when present.
  const ScoreReport* inf_rep = nullptr;
  for (size_t c = 0; c < horizons.size(); ++c) {
    if (horizons[c].infinite) {
      inf_rep = &reports[c];
      break;
    }
  }
  std::vector<std::optional<double>> gaps(horizons.size());
  if (inf_rep != nullptr) {
    for (size_t c = 0; c < horizons.size(); ++c) {
      if (horizons[c].infinite) continue;
      double g = 0.0;
      for (Index i = 0; i < n; ++i) {
        g = std::max(g, std::abs(reports[c].allocation[i] - inf_rep->allocation[i]));
      }
      gaps[c] = g;
    }
  }

  bool all_converged = true;
  for (const auto& rep : reports) all_converged = all_converged && rep.converged;

  if (common.output == "json") {
    json doc;
    doc["command"] = "sweep";
    doc["objective"] = objective;
    json toks = json::array();
    for (const auto& h : horizons) toks.push_back(h.token);
    doc["horizons"] = toks;
    doc["nodes"] = n;
    json cols = json::array();
    for (size_t c = 0; c < horizons.size(); ++c) {
      json col;
      col["horizon"] = horizons[c].token;
      json alloc = json::array();
      for (Index i = 0; i < n; ++i) alloc.push_back(reports[c].allocation[i]);
      col["allocation"] = alloc;
      col["objective_value"] = reports[c].objective;
      col["iterations"] = reports[c].iterations;
      col["converged"] = reports[c].converged;
      col["gap"] = gaps[c] ? json(*gaps[c]) : json(nullptr);
      cols.push_back(col);
    }
    doc["columns"] = cols;
    std::printf("%s\n", doc.dump(2).c_str());
  } else if (common.output == "csv") {
    std::printf("node");
    for (const auto& h : horizons) std::printf(",T=%s", h.token.c_str());
    std::printf("\n");
    for (Index i = 0; i < n; ++i) {
      std::printf("%ld", static_cast<long>(i + 1));
      for (const auto& rep : reports) std::printf(",%s", fg(rep.allocation[i]).c_str());
      std::printf("\n");
    }
    if (inf_rep != nullptr) {
      std::printf("gap");
      for (size_t c = 0; c < horizons.size(); ++c) {
        std::printf(",%s", gaps[c] ? fg(*gaps[c]).c_str() : "");
      }
      std::printf("\n");
    }
  } else {
    std::vector<size_t> widths;
    std::printf("node");
    for (const auto& h : horizons) {
      const std::string label = "T=" + h.token;
      const size_t w = std::max<size_t>(8, label.size());
      widths.push_back(w);
      std::printf("  %-*s", static_cast<int>(w), label.c_str());
    }
    std::printf("\n");
    for (Index i = 0; i < n; ++i) {
      std::printf("%4ld", static_cast<long>(i + 1));
      for (size_t c = 0; c < horizons.size(); ++c) {
        std::printf("  %-*s", static_cast<int>(widths[c]), f5(reports[c].allocation[i]).c_str());
      }
      std::printf("\n");
    }
    if (inf_rep != nullptr) {
      std::printf(" gap");
      for (size_t c = 0; c < horizons.size(); ++c) {
        std::printf("  %-*s", static_cast<int>(widths[c]),
                    gaps[c] ? f5(*gaps[c]).c_str() : "-");
      }
      std::printf("\n");
    }
    for (size_t c = 0; c < horizons.size(); ++c) {
      if (!reports[c].converged) {
        std::printf("column T=%s: not converged after %ld iterations\n", horizons[c].token.c_str(),
                    reports[c].iterations);
      }
    }
  }
  return all_converged ? 0 : 3;
}

// ---------------------------------------------------------------------------
// diagnose

int do_diagnose(const CommonConfig& common, const SolveOptions& sopts,
                const std::string& horizon_tok, bool aecs_rank) {
  const SystemMatrix sys = load_system(common);
  const Index n = sys.A.rows();

  const OrderedSchur os = ordered_real_schur(sys.A, common.tol.zero_tol);
  const int nm = os.classification.n_minus;
  const int n0 = os.classification.n_zero;
  const int np = os.classification.n_plus;
  const Matrix A0 = os.factorization.quasi_triangular.block(nm, nm, n0, n0);
  const AssumptionReport rep = check_assumptions(os.classification, A0, common.tol.semisimple_tol);

  std::optional<UniquenessCertificates> certs;
  if (rep.assumption2) {
    certs = uniqueness_certificates(block_diagonalize(sys.A, common.tol));
  }

  std::optional<Horizon> horizon;
  std::optional<ThetaPrimeWitness> witness;
  std::vector<BaselineCentrality> baselines;
  if (!horizon_tok.empty()) {
    horizon = parse_horizon(horizon_tok);
    if (horizon->infinite) {
      throw InvalidInputError("diagnose: --horizon must be finite");
    }
    witness = theta_prime_check(os.classification, horizon->T);
    baselines = baseline_centralities(sys.A, horizon->T);
  }

  std::optional<Index> rank_at_aecs;
  if (aecs_rank) {
    const ScoreReport opt = score_infinite(sys.A, ObjectiveKind::TraceInverse, sopts, common.tol);
    rank_at_aecs = controllability_rank(sys.A, opt.allocation);
  }

  if (common.output == "json") {
    json doc;
    doc["command"] = "diagnose";
    doc["nodes"] = n;
    doc["spectrum"] = {{"n_minus", nm}, {"n_zero", n0}, {"n_plus", np}};
    doc["assumption1"] = rep.assumption1;
    doc["assumption2"] = rep.assumption2;
    json viol = json::array();
    for (const Complex& z : rep.violating) viol.push_back({{"re", z.real()}, {"im", z.imag()}});
    doc["violating_eigenvalues"] = viol;
    if (certs) {
      doc["certificates"] = {{"rank_vcs", certs->rank_vcs},
                             {"rank_aecs", certs->rank_aecs},
                             {"vcs_certified", certs->vcs_certified},
                             {"aecs_certified", certs->aecs_certified}};
    } else {
      doc["certificates"] = nullptr;
    }
    if (horizon) {
      doc["horizon"] = horizon->token;
      doc["exceptional_horizon"] =
          witness ? json({{"theta", witness->theta}, {"ell", witness->ell}}) : json(nullptr);
      json rows = json::array();
      for (Index i = 0; i < n; ++i) {
        rows.push_back({{"node", i + 1},
                        {"ac", baselines[i].ac},
                        {"vce", baselines[i].vce},
                        {"ace", baselines[i].ace},
                        {"rank", baselines[i].rank}});
      }
      doc["baselines"] = rows;
    }
    doc["aecs_rank"] = rank_at_aecs ? json(*rank_at_aecs) : json(nullptr);
    std::printf("%s\n", doc.dump(2).c_str());
  } else if (common.output == "csv") {
    std::printf("key,value\n");
    std::printf("n_minus,%d\nn_zero,%d\nn_plus,%d\n", nm, n0, np);
    std::printf("assumption1,%s\nassumption2,%s\n", rep.assumption1 ? "pass" : "fail",
                rep.assumption2 ? "pass" : "fail");
    if (certs) {
      std::printf("rank_vcs,%ld\nrank_aecs,%ld\n", static_cast<long>(certs->rank_vcs),
                  static_cast<long>(certs->rank_aecs));
    }
    if (horizon) {
      std::printf("exceptional_horizon,%s\n", witness ? "yes" : "no");
    }
    if (rank_at_aecs) {
      std::printf("aecs_rank,%ld\n", static_cast<long>(*rank_at_aecs));
    }
    if (horizon) {
      std::printf("\nnode,ac,vce,ace,rank\n");
      for (Index i = 0; i < n; ++i) {
        std::printf("%ld,%s,%s,%s,%ld\n", static_cast<long>(i + 1), fg(baselines[i].ac).c_str(),
                    fg(baselines[i].vce).c_str(), fg(baselines[i].ace).c_str(),
                    static_cast<long>(baselines[i].rank));
      }
    }
  } else {
    std::printf("system: %ld nodes\n", static_cast<long>(n));
    std::printf("spectrum split: n_minus=%d n_zero=%d n_plus=%d\n", nm, n0, np);
    std::printf("assumption1 (at least one stable mode): %s\n", rep.assumption1 ? "PASS" : "FAIL");
    std::printf("assumption2 (zero-class eigenvalues real and semisimple): %s\n",
                rep.assumption2 ? "PASS" : "FAIL");
    if (!rep.violating.empty()) {
      std::printf("violating eigenvalues:");
      for (const Complex& z : rep.violating) std::printf(" %s", fmt_complex(z).c_str());
      std::printf("\n");
    }
    if (certs) {
      std::printf("uniqueness certificates: rank_vcs=%ld of %ld (%s), rank_aecs=%ld of %ld (%s)\n",
                  static_cast<long>(certs->rank_vcs), static_cast<long>(n),
                  certs->vcs_certified ? "certified" : "not certified",
                  static_cast<long>(certs->rank_aecs), static_cast<long>(n),
                  certs->aecs_certified ? "certified" : "not certified");
    } else {
      std::printf("uniqueness certificates: unavailable (assumption 2 fails)\n");
    }
    if (horizon) {
      if (witness) {
        std::printf("exceptional-horizon check at T=%s: theta=%s ell=%ld\n",
                    horizon->token.c_str(), fg(witness->theta).c_str(), witness->ell);
      } else {
        std::printf("exceptional-horizon check at T=%s: none\n", horizon->token.c_str());
      }
      std::printf("\nbaseline centralities at T=%s:\n", horizon->token.c_str());
      std::printf("node  %-12s  %-12s  %-12s  rank\n", "ac", "vce", "ace");
      for (Index i = 0; i < n; ++i) {
        char ac[32], vce[32], ace[32];
        std::snprintf(ac, sizeof(ac), "%.6f", baselines[i].ac);
        std::snprintf(vce, sizeof(vce), "%.6f", baselines[i].vce);
        std::snprintf(ace, sizeof(ace), "%.6f", baselines[i].ace);
        std::printf("%4ld  %-12s  %-12s  %-12s  %ld\n", static_cast<long>(i + 1), ac, vce, ace,
                    static_cast<long>(baselines[i].rank));
      }
    }
    if (rank_at_aecs) {
      std::printf("controllability rank at the infinite-horizon AECS optimum: %ld of %ld\n",
                  static_cast<long>(*rank_at_aecs), static_cast<long>(n));
    }
  }
  return 0;
}

template <typename F>
int run_guarded(F&& body) {
  try {
    return body();
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const AssumptionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NotHurwitzError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SingularSpectrumError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NotPositiveDefiniteError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const HorizonOverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const StagnationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const QrConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability scores for linear network dynamics"};
  app.require_subcommand(1);

  CommonConfig score_common, sweep_common, diag_common;
  SolveOptions score_solver, sweep_solver, diag_solver;
  std::string score_objective = "vcs", sweep_objective = "vcs";
  std::string score_horizon = "inf", diag_horizon;
  std::vector<std::string> sweep_horizons;
  bool diag_aecs_rank = false;

  CLI::App* score = app.add_subcommand("score", "Compute a controllability score");
  add_common(score, score_common);
  add_solver(score, score_solver);
  score->add_option("--objective", score_objective, "vcs (volumetric) or aecs (average-energy)")
      ->check(CLI::IsMember({"vcs", "aecs"}))
      ->capture_default_str();
  score->add_option("--horizon", score_horizon, "'inf' or a positive time horizon")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Score across several horizons");
  add_common(sweep, sweep_common);
  add_solver(sweep, sweep_solver);
  sweep->add_option("--objective", sweep_objective, "vcs or aecs")
      ->check(CLI::IsMember({"vcs", "aecs"}))
      ->capture_default_str();
  sweep->add_option("--horizons", sweep_horizons, "Comma-separated horizons, e.g. 1,1000,inf")
      ->delimiter(',');

  CLI::App* diagnose = app.add_subcommand("diagnose", "Report spectrum, assumptions, certificates");
  add_common(diagnose, diag_common);
  add_solver(diagnose, diag_solver);
  diagnose->add_option("--horizon", diag_horizon,
                       "Finite horizon for the exceptional-horizon check and baselines");
  diagnose->add_flag("--aecs-rank", diag_aecs_rank,
                     "Also report the controllability rank at the infinite-horizon AECS optimum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (score->parsed()) {
    return run_guarded([&] {
      if (!score_common.config_path.empty()) apply_config_file(score, score_common.config_path);
      return do_score(score_common, score_solver, score_objective, score_horizon);
    });
  }
  if (sweep->parsed()) {
    return run_guarded([&] {
      if (!sweep_common.config_path.empty()) apply_config_file(sweep, sweep_common.config_path);
      return do_sweep(sweep_common, sweep_solver, sweep_objective, sweep_horizons);
    });
  }
  return run_guarded([&] {
    if (!diag_common.config_path.empty()) apply_config_file(diagnose, diag_common.config_path);
    return do_diagnose(diag_common, diag_solver, diag_horizon, diag_aecs_rank);
  });
}
