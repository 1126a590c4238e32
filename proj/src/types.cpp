#include "ctrlscore/types.hpp"

#include <cmath>
#include <string>

namespace ctrlscore {

void require_finite(const Matrix& M, const char* what) {
  if (M.rows() < 1 || M.cols() < 1) {
    throw InvalidInputError(std::string(what) + ": matrix dimensions must be positive, got " +
                            std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  if (!M.allFinite()) {
    throw InvalidInputError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const Matrix& M, const char* what) {
  require_finite(M, what);
  if (M.rows() != M.cols()) {
    throw InvalidInputError(std::string(what) + ": matrix must be square, got " +
                            std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
}

Allocation::Allocation(Vector p) : p_(std::move(p)) {
  if (p_.size() < 1) {
    throw InvalidInputError("Allocation: dimension must be positive");
  }
  if (!p_.allFinite()) {
    throw InvalidInputError("Allocation: non-finite entries");
  }
  if ((p_.array() < 0.0).any()) {
    throw InvalidInputError("Allocation: negative entries");
  }
  const double sum = p_.sum();
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidInputError("Allocation: entries sum to " + std::to_string(sum) +
                            ", expected 1 within 1e-12");
  }
}

Allocation Allocation::uniform(Index n) {
  if (n < 1) {
    throw InvalidInputError("Allocation::uniform: dimension must be positive");
  }
  return Allocation(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

Allocation Allocation::vertex(Index n, Index i) {
  if (n < 1) {
    throw InvalidInputError("Allocation::vertex: dimension must be positive");
  }
  if (i < 0 || i >= n) {
    throw InvalidInputError("Allocation::vertex: index out of range");
  }
  Vector p = Vector::Zero(n);
  p(i) = 1.0;
  return Allocation(std::move(p));
}

}  // namespace ctrlscore
