#pragma once

// Lambda grid, V-fold cross-validation, the positive-definiteness floor and
// the end-to-end estimation pipelines (median-of-means "rcec" and
// sample-covariance "coat").

#include <cstdint>
#include <string>
#include <vector>

#include "rcec/compdata.hpp"
#include "rcec/threshold.hpp"
#include "rcec/types.hpp"

namespace rcec {

enum class EstimatorKind { Rcec, Coat };

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view text);

struct EstimatorConfig {
  double L = 1.0;
  ThresholdRule rule = ThresholdRule::soft();
  std::size_t folds = 5;
  std::size_t grid_size = 50;
  bool enforce_pd = true;
  bool threshold_diagonal = false;
  std::uint64_t seed = 1;
  EstimatorKind kind = EstimatorKind::Rcec;
  // 0 selects ceil((2 + L) ln p); any value is clamped to the sample size.
  std::size_t block_count = 0;
  // Permute samples (seeded) before forming median-of-means blocks.
  bool shuffle_blocks = false;

  // Throws std::invalid_argument unless folds >= 2, grid_size >= 2, L > 0.
  void validate() const;

  friend bool operator==(const EstimatorConfig&, const EstimatorConfig&) = default;
};

// Number of median-of-means blocks used for a sample of size n. Always 1 for
// the coat estimator.
std::size_t block_count_for(const EstimatorConfig& config, std::size_t p, std::size_t n);

// Unthresholded covariance of the rows of `data` by the configured estimator.
SymmetricMatrix covariance_estimate(const Matrix& data, const EstimatorConfig& config);

// grid_size values evenly spaced on [0, lambda_max], where lambda_max is the
// smallest lambda that zeroes every off-diagonal entry under soft
// thresholding. If there is no off-diagonal signal, returns {0, kDegenerateGridTop}.
inline constexpr double kDegenerateGridTop = 1e-6;
std::vector<double> lambda_grid(const SymmetricMatrix& gamma, std::size_t n, std::size_t grid_size);

// Seeded Fisher-Yates shuffle of 0..n-1 cut into V contiguous chunks whose
// sizes differ by at most one (larger chunks first). Indices inside each fold
// are sorted. Throws std::invalid_argument if n < 2V.
std::vector<std::vector<Index>> make_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

struct CvPoint {
  double lambda = 0.0;
  double error = 0.0;  // mean over folds of ||Omega^(-v)(lambda) - Gamma^(v)||_F^2
};

struct CvResult {
  double lambda_star = 0.0;
  std::vector<CvPoint> curve;
};

// Cross-validated lambda over `grid`. Ties go to the largest lambda.
CvResult cv_select(const Matrix& data, const EstimatorConfig& config, const std::vector<double>& grid);
// Same, over lambda_grid of the full-data covariance estimate.
CvResult cv_select(const Matrix& data, const EstimatorConfig& config);
CvResult cv_select(const ClrMatrix& w, const EstimatorConfig& config);

// A matrix is treated as positive definite when its smallest eigenvalue
// exceeds this value.
inline constexpr double kPositiveDefiniteMargin = 1e-10;

struct PdFloorResult {
  std::vector<double> grid;  // the retained suffix of the input grid
  std::vector<bool> qualifies;  // per input grid value
  bool any_qualifies = false;
  bool suffix = true;  // qualifying values form a suffix of the input grid
  std::vector<std::string> warnings;
};

// Restricts an ascending grid to {lambda >= lambda_pd}, lambda_pd being the
// smallest grid value whose thresholded full-data estimate is positive
// definite. If none qualifies, the full grid is returned with a warning.
PdFloorResult pd_floor(const SymmetricMatrix& gamma, std::size_t n, const std::vector<double>& grid,
                       const EstimatorConfig& config);
PdFloorResult pd_floor(const Matrix& data, const std::vector<double>& grid, const EstimatorConfig& config);

struct EstimateResult {
  SymmetricMatrix omega_hat;
  SymmetricMatrix gamma_hat;
  double lambda_star = 0.0;
  std::vector<CvPoint> cv_curve;
  double min_eigenvalue = 0.0;
  std::size_t block_count = 1;
  EstimatorKind kind = EstimatorKind::Rcec;
  std::vector<std::string> warnings;
};

// Full pipeline on log-scale rows (clr coordinates, or latent log-abundances
// for the oracle benchmark): covariance estimate, lambda grid, optional
// positive-definiteness floor, cross-validation, final thresholding.
// Throws std::invalid_argument if n < 2V.
EstimateResult estimate_from_logs(const Matrix& data, const EstimatorConfig& config);

// clr transform followed by estimate_from_logs.
EstimateResult estimate(const CompositionMatrix& x, const EstimatorConfig& config);

}  // namespace rcec
