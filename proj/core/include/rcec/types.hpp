#pragma once

// Shared value types and error classes for the rcec library.

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rcec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Input data violates a domain invariant (non-positive proportion, rows not
// closed, ...). Distinct from std::invalid_argument, which signals a bad
// argument from the caller.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative numerical routine failed (e.g. Cholesky or eigensolver).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Square real matrix with entry(i,j) == entry(j,i) exactly.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  // Throws std::invalid_argument if `values` is not square or not exactly
  // symmetric.
  explicit SymmetricMatrix(Matrix values);

  // Averages `a` with its transpose; the result is exactly symmetric.
  static SymmetricMatrix symmetrize(const Matrix& a);
  static SymmetricMatrix zeros(Index p);
  static SymmetricMatrix identity(Index p);

  Index dim() const { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix& values() const { return values_; }

  // Writes both (i,j) and (j,i).
  void set(Index i, Index j, double v) {
    values_(i, j) = v;
    values_(j, i) = v;
  }

  bool all_finite() const { return values_.allFinite(); }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_ == b.values_;
  }

 private:
  Matrix values_;
};

// Throws std::invalid_argument unless a and b have the same dimension.
void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* what);

}  // namespace rcec
