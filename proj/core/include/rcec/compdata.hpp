#pragma once

// Compositional data: counts, closed compositions and their centered
// log-ratio (clr) transform. Natural logarithms throughout.

#include <vector>

#include "rcec/types.hpp"

namespace rcec {

inline constexpr double kDefaultZeroReplacement = 0.5;
inline constexpr double kRowSumTolerance = 1e-10;
inline constexpr double kClrRowSumTolerance = 1e-8;

// n x p nonnegative read counts; every row has a positive entry.
class CountMatrix {
 public:
  explicit CountMatrix(Matrix values);  // throws DataError
  const Matrix& values() const { return values_; }
  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }

 private:
  Matrix values_;
};

// n x p strictly positive proportions; rows sum to 1 within kRowSumTolerance.
// Inputs that are not closed are rejected rather than renormalized.
class CompositionMatrix {
 public:
  explicit CompositionMatrix(Matrix values);  // throws DataError
  const Matrix& values() const { return values_; }
  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }

  // Rows selected (with repetition allowed) in the given order.
  CompositionMatrix select_rows(const std::vector<Index>& rows) const;

 private:
  Matrix values_;
};

// n x p clr coordinates; rows sum to 0 within kClrRowSumTolerance.
class ClrMatrix {
 public:
  explicit ClrMatrix(Matrix values);  // throws DataError
  const Matrix& values() const { return values_; }
  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }

 private:
  Matrix values_;
};

// Replaces zero counts by `zero_replacement` and closes each row.
// Throws std::invalid_argument if zero_replacement <= 0.
CompositionMatrix close_counts(const CountMatrix& counts,
                               double zero_replacement = kDefaultZeroReplacement);

// W_kj = log X_kj - mean_i log X_ki (geometric mean taken in log space).
ClrMatrix clr_transform(const CompositionMatrix& x);

// Variation matrix t_ij = w_ii + w_jj - 2 w_ij of a covariance matrix.
SymmetricMatrix variation_from_cov(const SymmetricMatrix& omega);

}  // namespace rcec
