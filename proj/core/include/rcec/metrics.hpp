#pragma once

// Loss norms, support recovery statistics and a cyclic Jacobi symmetric
// eigensolver.

#include "rcec/types.hpp"

namespace rcec {

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values(k); empty unless requested
  int sweeps = 0;
};

// Cyclic Jacobi. Iterates until the off-diagonal Frobenius norm falls below
// 1e-10 * max|a_ij|. Throws NumericalError on non-finite input or if 100
// sweeps do not converge.
SymmetricEigen symmetric_eigen(const SymmetricMatrix& a, bool compute_vectors = true);

double min_eigenvalue(const SymmetricMatrix& a);

// max_ij |a_ij|
double max_abs_entry(const Matrix& a);
// max_j sum_i |a_ij|
double matrix_l1_norm(const Matrix& a);

// Norms of A - B. Each throws std::invalid_argument on a dimension mismatch.
double matrix_l1_loss(const SymmetricMatrix& a, const SymmetricMatrix& b);
double spectral_loss(const SymmetricMatrix& a, const SymmetricMatrix& b);
double frobenius_loss(const SymmetricMatrix& a, const SymmetricMatrix& b);
double max_loss(const SymmetricMatrix& a, const SymmetricMatrix& b);

struct SupportMetrics {
  double tpr = 0.0;
  double fpr = 0.0;
  bool sign_consistent = false;
  bool tpr_degenerate = false;  // truth has no nonzero off-diagonal pair; tpr reported as 1
  bool fpr_degenerate = false;  // truth has no zero off-diagonal pair; fpr reported as 0
};

// Rates over unordered off-diagonal pairs i < j. An estimated entry counts as
// nonzero when |value| > zero_tol. Sign consistency uses sgn(0) = 0.
SupportMetrics support_metrics(const SymmetricMatrix& omega_hat, const SymmetricMatrix& omega0,
                               double zero_tol = 0.0);

// True when sgn(omega_hat_ij) == sgn(omega0_ij) for every i < j whose true
// correlation |w0_ij| / sqrt(w0_ii w0_jj) is at least min_abs_correlation.
bool sign_consistent_on_strong(const SymmetricMatrix& omega_hat, const SymmetricMatrix& omega0,
                               double min_abs_correlation);

struct ProxyGap {
  double gap = 0.0;    // ||Omega0 - G Omega0 G||_max
  double bound = 0.0;  // 3 ||Omega0||_1 / p
};

// Gap between a basis covariance and its clr counterpart G Omega0 G with
// G = I - 11'/p.
ProxyGap clr_proxy_gap(const SymmetricMatrix& omega0);

// G Omega0 G.
SymmetricMatrix clr_covariance(const SymmetricMatrix& omega0);

}  // namespace rcec
