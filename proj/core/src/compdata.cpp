#include "rcec/compdata.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace rcec {

namespace {

void require_shape(const Matrix& m, const char* what) {
  if (m.rows() < 2 || m.cols() < 2) {
    throw DataError(std::string(what) + ": need at least 2 samples and 2 components, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

std::string at(Index row, Index col) {
  return " at row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

}  // namespace

CountMatrix::CountMatrix(Matrix values) : values_(std::move(values)) {
  require_shape(values_, "CountMatrix");
  for (Index k = 0; k < values_.rows(); ++k) {
    bool any_positive = false;
    for (Index j = 0; j < values_.cols(); ++j) {
      const double v = values_(k, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("CountMatrix: count must be finite and nonnegative" + at(k, j));
      }
      any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) {
      throw DataError("CountMatrix: row " + std::to_string(k + 1) + " has no positive count");
    }
  }
}

CompositionMatrix::CompositionMatrix(Matrix values) : values_(std::move(values)) {
  require_shape(values_, "CompositionMatrix");
  for (Index k = 0; k < values_.rows(); ++k) {
    double sum = 0.0;
    for (Index j = 0; j < values_.cols(); ++j) {
      const double v = values_(k, j);
      if (!std::isfinite(v) || v <= 0.0) {
        throw DataError("CompositionMatrix: proportion must be strictly positive" + at(k, j));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw DataError("CompositionMatrix: row " + std::to_string(k + 1) +
                      " does not sum to 1 (sum = " + std::to_string(sum) + ")");
    }
  }
}

CompositionMatrix CompositionMatrix::select_rows(const std::vector<Index>& rows) const {
  Matrix out(static_cast<Index>(rows.size()), values_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Index>(r)) = values_.row(rows[r]);
  }
  return CompositionMatrix(std::move(out));
}

ClrMatrix::ClrMatrix(Matrix values) : values_(std::move(values)) {
  require_shape(values_, "ClrMatrix");
  for (Index k = 0; k < values_.rows(); ++k) {
    if (!values_.row(k).allFinite()) {
      throw DataError("ClrMatrix: non-finite entry in row " + std::to_string(k + 1));
    }
    // Scale the tolerance with the magnitude of the row; clr values of
    // extreme compositions reach several hundred.
    const double scale = std::max(1.0, values_.row(k).cwiseAbs().maxCoeff());
    if (std::abs(values_.row(k).sum()) > kClrRowSumTolerance * scale) {
      throw DataError("ClrMatrix: row " + std::to_string(k + 1) + " does not sum to 0");
    }
  }
}

CompositionMatrix close_counts(const CountMatrix& counts, double zero_replacement) {
  if (!(zero_replacement > 0.0) || !std::isfinite(zero_replacement)) {
    throw std::invalid_argument("close_counts: zero_replacement must be positive");
  }
  Matrix x = counts.values();
  for (Index k = 0; k < x.rows(); ++k) {
    double sum = 0.0;
    for (Index j = 0; j < x.cols(); ++j) {
      if (x(k, j) == 0.0) x(k, j) = zero_replacement;
      sum += x(k, j);
    }
    x.row(k) /= sum;
  }
  return CompositionMatrix(std::move(x));
}

ClrMatrix clr_transform(const CompositionMatrix& x) {
  Matrix w = x.values().array().log().matrix();
  for (Index k = 0; k < w.rows(); ++k) {
    const double mean_log = w.row(k).mean();
    w.row(k).array() -= mean_log;
  }
  return ClrMatrix(std::move(w));
}

SymmetricMatrix variation_from_cov(const SymmetricMatrix& omega) {
  const Index p = omega.dim();
  SymmetricMatrix t = SymmetricMatrix::zeros(p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      t.set(i, j, omega(i, i) + omega(j, j) - 2.0 * omega(i, j));
    }
  }
  return t;
}

}  // namespace rcec
