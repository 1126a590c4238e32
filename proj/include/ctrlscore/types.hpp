#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ctrlscore/errors.hpp"

namespace ctrlscore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

// Throw InvalidInputError unless M is non-empty with only finite entries.
void require_finite(const Matrix& M, const char* what);

// Additionally require M to be square.
void require_square(const Matrix& M, const char* what);

// A point of the standard simplex: nonnegative entries summing to one
// (within 1e-12).  Construction validates; the stored vector is immutable.
class Allocation {
 public:
  explicit Allocation(Vector p);

  static Allocation uniform(Index n);
  static Allocation vertex(Index n, Index i);

  const Vector& vec() const { return p_; }
  double operator[](Index i) const { return p_(i); }
  Index size() const { return p_.size(); }

 private:
  Vector p_;
};

}  // namespace ctrlscore
