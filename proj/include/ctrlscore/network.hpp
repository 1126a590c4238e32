#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctrlscore/types.hpp"

namespace ctrlscore {

// Directed weighted edge; node indices are 1-based as in input files.
// source -> target means the state of source drives the state of target.
struct Edge {
  int source = 0;
  int target = 0;
  double weight = 0.0;
};

struct NetworkSpec {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<std::string> labels;  // optional; empty means use indices
};

struct SystemMatrix {
  Matrix A;
  std::string source;  // human-readable provenance of the matrix
  std::vector<std::string> labels;
};

// Diffusive coupling: edge (s -> t, c) contributes c to A(t, s) and -c to
// A(t, t), so every row of A sums to zero up to summation rounding (exactly,
// when the incoming weights of a row accumulate without rounding).
SystemMatrix build_laplacian_dynamics(const NetworkSpec& spec);

// The 10-node directed network used throughout the test suite.
NetworkSpec fixture_fig2();

// Edge-list format: one "source,target,weight" triple per line, '#' starts a
// comment, an optional header line is skipped.  node_count is the largest
// index that appears.
NetworkSpec parse_edge_list(std::istream& in, const std::string& origin = "<stream>");
NetworkSpec read_edge_list(const std::string& path);

// Whitespace-separated square matrix, one row per line; '#' comments and
// blank lines are ignored.
Matrix parse_matrix(std::istream& in, const std::string& origin = "<stream>");
Matrix read_matrix(const std::string& path);

// Interpret a square nonnegative weight matrix with zero diagonal as a
// network: entry (i, j) is the weight of the edge j -> i.
NetworkSpec network_from_weight_matrix(const Matrix& C);

}  // namespace ctrlscore
