#include "rcec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rcec {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kRelativeTolerance = 1e-10;

double off_diagonal_norm(const std::vector<double>& a, std::size_t p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) sum += a[i * p + j] * a[i * p + j];
  }
  return std::sqrt(2.0 * sum);
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SymmetricEigen symmetric_eigen(const SymmetricMatrix& input, bool compute_vectors) {
  if (!input.all_finite()) throw NumericalError("symmetric_eigen: non-finite matrix entry");
  const auto p = static_cast<std::size_t>(input.dim());

  std::vector<double> a(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) a[i * p + j] = input(static_cast<Index>(i), static_cast<Index>(j));
  }
  std::vector<double> v;
  if (compute_vectors) {
    v.assign(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) v[i * p + i] = 1.0;
  }

  const double tolerance = kRelativeTolerance * max_abs_entry(input.values());
  int sweep = 0;
  for (; off_diagonal_norm(a, p) > tolerance; ++sweep) {
    if (sweep == kMaxSweeps) throw NumericalError("symmetric_eigen: Jacobi iteration did not converge");
    for (std::size_t r = 0; r + 1 < p; ++r) {
      for (std::size_t q = r + 1; q < p; ++q) {
        const double arq = a[r * p + q];
        if (arq == 0.0) continue;
        const double theta = (a[q * p + q] - a[r * p + r]) / (2.0 * arq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < p; ++k) {
          if (k == r || k == q) continue;
          const double akr = a[k * p + r];
          const double akq = a[k * p + q];
          const double new_kr = c * akr - s * akq;
          const double new_kq = s * akr + c * akq;
          a[k * p + r] = new_kr;
          a[r * p + k] = new_kr;
          a[k * p + q] = new_kq;
          a[q * p + k] = new_kq;
        }
        a[r * p + r] -= t * arq;
        a[q * p + q] += t * arq;
        a[r * p + q] = 0.0;
        a[q * p + r] = 0.0;

        if (compute_vectors) {
          for (std::size_t k = 0; k < p; ++k) {
            const double vkr = v[k * p + r];
            const double vkq = v[k * p + q];
            v[k * p + r] = c * vkr - s * vkq;
            v[k * p + q] = s * vkr + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * p + x] < a[y * p + y]; });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(static_cast<Index>(p));
  if (compute_vectors) out.vectors.resize(static_cast<Index>(p), static_cast<Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    const std::size_t src = order[k];
    out.values(static_cast<Index>(k)) = a[src * p + src];
    if (compute_vectors) {
      for (std::size_t i = 0; i < p; ++i) {
        out.vectors(static_cast<Index>(i), static_cast<Index>(k)) = v[i * p + src];
      }
    }
  }
  return out;
}

double min_eigenvalue(const SymmetricMatrix& a) {
  if (a.dim() == 0) throw std::invalid_argument("min_eigenvalue: empty matrix");
  return symmetric_eigen(a, false).values(0);
}

double max_abs_entry(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double matrix_l1_norm(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

double matrix_l1_loss(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "matrix_l1_loss");
  return matrix_l1_norm(a.values() - b.values());
}

double spectral_loss(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "spectral_loss");
  const auto eig = symmetric_eigen(SymmetricMatrix::symmetrize(a.values() - b.values()), false);
  if (eig.values.size() == 0) return 0.0;
  return std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
}

double frobenius_loss(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "frobenius_loss");
  return (a.values() - b.values()).norm();
}

double max_loss(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "max_loss");
  return max_abs_entry(a.values() - b.values());
}

SupportMetrics support_metrics(const SymmetricMatrix& omega_hat, const SymmetricMatrix& omega0,
                               double zero_tol) {
  require_same_dim(omega_hat, omega0, "support_metrics");
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("support_metrics: zero_tol must be >= 0");
  const Index p = omega0.dim();
  std::size_t true_nonzero = 0;
  std::size_t true_zero = 0;
  std::size_t hits = 0;
  std::size_t false_hits = 0;
  bool signs_agree = true;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const bool detected = std::abs(omega_hat(i, j)) > zero_tol;
      if (omega0(i, j) != 0.0) {
        ++true_nonzero;
        hits += detected ? 1 : 0;
      } else {
        ++true_zero;
        false_hits += detected ? 1 : 0;
      }
      signs_agree = signs_agree && sgn(omega_hat(i, j)) == sgn(omega0(i, j));
    }
  }
  SupportMetrics m;
  m.sign_consistent = signs_agree;
  m.tpr_degenerate = true_nonzero == 0;
  m.fpr_degenerate = true_zero == 0;
  m.tpr = m.tpr_degenerate ? 1.0 : static_cast<double>(hits) / static_cast<double>(true_nonzero);
  m.fpr = m.fpr_degenerate ? 0.0 : static_cast<double>(false_hits) / static_cast<double>(true_zero);
  return m;
}

bool sign_consistent_on_strong(const SymmetricMatrix& omega_hat, const SymmetricMatrix& omega0,
                               double min_abs_correlation) {
  require_same_dim(omega_hat, omega0, "sign_consistent_on_strong");
  const Index p = omega0.dim();
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double corr = std::abs(omega0(i, j)) / std::sqrt(omega0(i, i) * omega0(j, j));
      if (corr >= min_abs_correlation && sgn(omega_hat(i, j)) != sgn(omega0(i, j))) return false;
    }
  }
  return true;
}

SymmetricMatrix clr_covariance(const SymmetricMatrix& omega0) {
  const Index p = omega0.dim();
  const Matrix g = Matrix::Identity(p, p) - Matrix::Constant(p, p, 1.0 / static_cast<double>(p));
  return SymmetricMatrix::symmetrize(g * omega0.values() * g);
}

ProxyGap clr_proxy_gap(const SymmetricMatrix& omega0) {
  const Index p = omega0.dim();
  if (p == 0) throw std::invalid_argument("clr_proxy_gap: empty matrix");
  ProxyGap out;
  out.gap = max_loss(omega0, clr_covariance(omega0));
  out.bound = 3.0 * matrix_l1_norm(omega0.values()) / static_cast<double>(p);
  return out;
}

}  // namespace rcec
