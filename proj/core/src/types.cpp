#include "rcec/types.hpp"

#include <cmath>
#include <utility>

namespace rcec {

SymmetricMatrix::SymmetricMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("SymmetricMatrix: matrix is not square");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = j + 1; i < values_.rows(); ++i) {
      const double a = values_(i, j);
      const double b = values_(j, i);
      if (a != b && !(std::isnan(a) && std::isnan(b))) {
        throw std::invalid_argument("SymmetricMatrix: matrix is not symmetric");
      }
    }
  }
}

SymmetricMatrix SymmetricMatrix::symmetrize(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("SymmetricMatrix::symmetrize: matrix is not square");
  }
  Matrix s = a;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  SymmetricMatrix out;
  out.values_ = std::move(s);
  return out;
}

SymmetricMatrix SymmetricMatrix::zeros(Index p) {
  SymmetricMatrix out;
  out.values_ = Matrix::Zero(p, p);
  return out;
}

SymmetricMatrix SymmetricMatrix::identity(Index p) {
  SymmetricMatrix out;
  out.values_ = Matrix::Identity(p, p);
  return out;
}

void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace rcec
