#include "ctrlscore/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace ctrlscore {

namespace {

std::string strip_comment_and_trim(const std::string& line) {
  std::string s = line;
  const std::size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) out.push_back(strip_comment_and_trim(tok));
  return out;
}

bool parse_int(const std::string& s, int& out) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) return false;
    out = v;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) return false;
    out = v;
    return true;
  } catch (...) {
    return false;
  }
}

void validate_spec(const NetworkSpec& spec, const char* what) {
  if (spec.node_count < 1) {
    throw InvalidInputError(std::string(what) + ": node count must be positive");
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : spec.edges) {
    if (e.source < 1 || e.source > spec.node_count || e.target < 1 ||
        e.target > spec.node_count) {
      throw InvalidInputError(std::string(what) + ": edge (" + std::to_string(e.source) + "," +
                              std::to_string(e.target) + ") has an index outside 1.." +
                              std::to_string(spec.node_count));
    }
    if (e.source == e.target) {
      throw InvalidInputError(std::string(what) + ": self-loop at node " +
                              std::to_string(e.source));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidInputError(std::string(what) + ": edge (" + std::to_string(e.source) + "," +
                              std::to_string(e.target) + ") must have positive finite weight");
    }
    if (!seen.insert({e.source, e.target}).second) {
      throw InvalidInputError(std::string(what) + ": duplicate edge (" +
                              std::to_string(e.source) + "," + std::to_string(e.target) + ")");
    }
  }
  if (!spec.labels.empty() && static_cast<int>(spec.labels.size()) != spec.node_count) {
    throw InvalidInputError(std::string(what) + ": label count must match node count");
  }
}

}  // namespace

SystemMatrix build_laplacian_dynamics(const NetworkSpec& spec) {
  validate_spec(spec, "build_laplacian_dynamics");
  const int n = spec.node_count;
  Matrix A = Matrix::Zero(n, n);
  for (const Edge& e : spec.edges) {
    A(e.target - 1, e.source - 1) += e.weight;
  }
  // Diagonal balances each row exactly, so row sums are identically zero.
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) off += A(i, j);
    }
    A(i, i) = -off;
  }
  SystemMatrix sys;
  sys.A = std::move(A);
  sys.source = "laplacian(" + std::to_string(n) + " nodes, " +
               std::to_string(spec.edges.size()) + " edges)";
  sys.labels = spec.labels;
  return sys;
}

NetworkSpec fixture_fig2() {
  NetworkSpec spec;
  spec.node_count = 10;
  const double w = 0.2;
  spec.edges = {{1, 5, w}, {2, 10, w}, {3, 8, w}, {4, 6, w}, {7, 1, w},
                {7, 2, w}, {7, 3, w}, {7, 4, w}, {9, 1, w}, {10, 6, w}};
  return spec;
}

NetworkSpec parse_edge_list(std::istream& in, const std::string& origin) {
  NetworkSpec spec;
  std::string line;
  long line_no = 0;
  bool saw_data = false;
  int max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment_and_trim(line);
    if (body.empty()) continue;
    const std::vector<std::string> tok = split_csv(body);
    if (tok.size() != 3) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 'source,target,weight', got '" + body + "'");
    }
    Edge e;
    if (!parse_int(tok[0], e.source)) {
      // A single non-numeric first field before any data is a header line.
      if (!saw_data) {
        saw_data = true;  // only one header allowed
        continue;
      }
      throw ParseError(origin + ":" + std::to_string(line_no) + ": bad source index '" +
                       tok[0] + "'");
    }
    if (!parse_int(tok[1], e.target)) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": bad target index '" +
                       tok[1] + "'");
    }
    if (!parse_double(tok[2], e.weight)) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": bad weight '" + tok[2] + "'");
    }
    if (e.source < 1 || e.target < 1) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": node indices are 1-based");
    }
    saw_data = true;
    max_index = std::max({max_index, e.source, e.target});
    spec.edges.push_back(e);
  }
  if (spec.edges.empty()) {
    throw ParseError(origin + ": no edges found");
  }
  spec.node_count = max_index;
  try {
    validate_spec(spec, "parse_edge_list");
  } catch (const InvalidInputError& err) {
    throw ParseError(origin + ": " + err.what());
  }
  return spec;
}

NetworkSpec read_edge_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("read_edge_list: cannot open '" + path + "'");
  }
  return parse_edge_list(f, path);
}

Matrix parse_matrix(std::istream& in, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment_and_trim(line);
    if (body.empty()) continue;
    std::istringstream is(body);
    std::vector<double> row;
    std::string tok;
    while (is >> tok) {
      double v = 0.0;
      if (!parse_double(tok, v)) {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": bad entry '" + tok + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": ragged row (" +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(origin + ": no matrix rows found");
  }
  if (rows.size() != rows.front().size()) {
    throw ParseError(origin + ": matrix must be square, got " + std::to_string(rows.size()) +
                     " rows of " + std::to_string(rows.front().size()) + " entries");
  }
  const Index n = static_cast<Index>(rows.size());
  Matrix M(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) M(i, j) = rows[i][j];
  }
  if (!M.allFinite()) {
    throw ParseError(origin + ": matrix has non-finite entries");
  }
  return M;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("read_matrix: cannot open '" + path + "'");
  }
  return parse_matrix(f, path);
}

NetworkSpec network_from_weight_matrix(const Matrix& C) {
  require_square(C, "network_from_weight_matrix");
  const Index n = C.rows();
  NetworkSpec spec;
  spec.node_count = static_cast<int>(n);
  for (Index i = 0; i < n; ++i) {
    if (C(i, i) != 0.0) {
      throw InvalidInputError("network_from_weight_matrix: diagonal must be zero (no self-loops)");
    }
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = C(i, j);
      if (w == 0.0) continue;
      if (w < 0.0) {
        throw InvalidInputError("network_from_weight_matrix: negative weight at (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
      // Entry (i, j) holds the weight of the edge j -> i.
      spec.edges.push_back({static_cast<int>(j + 1), static_cast<int>(i + 1), w});
    }
  }
  return spec;
}

}  // namespace ctrlscore
