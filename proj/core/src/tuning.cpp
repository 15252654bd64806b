#include "rcec/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "rcec/metrics.hpp"
#include "rcec/mom.hpp"
#include "rcec/parallel.hpp"
#include "rcec/random.hpp"

namespace rcec {

namespace {

constexpr std::uint64_t kFoldStream = 1;
constexpr std::uint64_t kShuffleStream = 2;

Matrix select_rows(const Matrix& data, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), data.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Index>(r)) = data.row(rows[r]);
  return out;
}

double squared_frobenius_distance(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return (a.values() - b.values()).squaredNorm();
}

bool positive_definite(const SymmetricMatrix& a) {
  const Index p = a.dim();
  const Matrix shifted = a.values() - kPositiveDefiniteMargin * Matrix::Identity(p, p);
  Eigen::LLT<Matrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace

std::string to_string(EstimatorKind kind) { return kind == EstimatorKind::Rcec ? "rcec" : "coat"; }

EstimatorKind parse_estimator_kind(std::string_view text) {
  if (text == "rcec") return EstimatorKind::Rcec;
  if (text == "coat") return EstimatorKind::Coat;
  throw std::invalid_argument("unknown estimator '" + std::string(text) + "' (expected rcec or coat)");
}

void EstimatorConfig::validate() const {
  if (folds < 2) throw std::invalid_argument("EstimatorConfig: folds must be >= 2");
  if (grid_size < 2) throw std::invalid_argument("EstimatorConfig: grid_size must be >= 2");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("EstimatorConfig: L must be > 0");
}

std::size_t block_count_for(const EstimatorConfig& config, std::size_t p, std::size_t n) {
  if (config.kind == EstimatorKind::Coat) return 1;
  if (config.block_count > 0) return std::min(config.block_count, n);
  return default_block_count(p, config.L, n);
}

SymmetricMatrix covariance_estimate(const Matrix& data, const EstimatorConfig& config) {
  const auto n = static_cast<std::size_t>(data.rows());
  const auto p = static_cast<std::size_t>(data.cols());
  if (config.kind == EstimatorKind::Coat) return sample_covariance(data);
  return mom_covariance(data, block_count_for(config, p, n));
}

std::vector<double> lambda_grid(const SymmetricMatrix& gamma, std::size_t n, std::size_t grid_size) {
  if (grid_size < 2) throw std::invalid_argument("lambda_grid: grid_size must be >= 2");
  const Index p = gamma.dim();
  if (p < 2 || n < 2) throw std::invalid_argument("lambda_grid: need p >= 2 and n >= 2");
  const double rate = std::log(static_cast<double>(p)) / static_cast<double>(n);

  double lambda_max = 0.0;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      if (gamma(i, j) == 0.0) continue;
      const double scale = std::sqrt(std::max(gamma(i, i), kDiagonalFloor) *
                                     std::max(gamma(j, j), kDiagonalFloor) * rate);
      lambda_max = std::max(lambda_max, std::abs(gamma(i, j)) / scale);
    }
  }
  if (lambda_max == 0.0) return {0.0, kDegenerateGridTop};

  std::vector<double> grid(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    grid[g] = lambda_max * static_cast<double>(g) / static_cast<double>(grid_size - 1);
  }
  grid.back() = lambda_max;
  return grid;
}

std::vector<std::vector<Index>> make_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds < 2 || n < 2 * folds) {
    throw std::invalid_argument("make_folds: need n >= 2V (n = " + std::to_string(n) +
                                ", V = " + std::to_string(folds) + ")");
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng = Rng::child(seed, {kFoldStream});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<std::vector<Index>> out(folds);
  const std::size_t base = n / folds;
  const std::size_t larger = n % folds;
  std::size_t begin = 0;
  for (std::size_t v = 0; v < folds; ++v) {
    const std::size_t size = base + (v < larger ? 1 : 0);
    out[v].assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                  order.begin() + static_cast<std::ptrdiff_t>(begin + size));
    std::sort(out[v].begin(), out[v].end());
    begin += size;
  }
  return out;
}

CvResult cv_select(const Matrix& data, const EstimatorConfig& config, const std::vector<double>& grid) {
  config.validate();
  if (grid.empty()) throw std::invalid_argument("cv_select: empty lambda grid");
  const auto n = static_cast<std::size_t>(data.rows());
  const auto folds = make_folds(n, config.folds, config.seed);
  const std::size_t V = folds.size();

  // errors[v][g]
  std::vector<std::vector<double>> errors(V, std::vector<double>(grid.size()));
  parallel_for(V, [&](std::size_t v) {
    std::vector<Index> train;
    train.reserve(n - folds[v].size());
    for (std::size_t u = 0; u < V; ++u) {
      if (u != v) train.insert(train.end(), folds[u].begin(), folds[u].end());
    }
    std::sort(train.begin(), train.end());
    const Matrix train_rows = select_rows(data, train);
    const SymmetricMatrix gamma_train = covariance_estimate(train_rows, config);
    const SymmetricMatrix gamma_test = covariance_estimate(select_rows(data, folds[v]), config);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const SymmetricMatrix omega =
          threshold_matrix(gamma_train, grid[g], train.size(), config.rule, config.threshold_diagonal);
      errors[v][g] = squared_frobenius_distance(omega, gamma_test);
    }
  });

  CvResult result;
  result.curve.reserve(grid.size());
  double best = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double sum = 0.0;
    for (std::size_t v = 0; v < V; ++v) sum += errors[v][g];
    const double mean = sum / static_cast<double>(V);
    result.curve.push_back({grid[g], mean});
    if (g == 0 || mean <= best) {
      best = mean;
      result.lambda_star = grid[g];
    }
  }
  return result;
}

CvResult cv_select(const Matrix& data, const EstimatorConfig& config) {
  const SymmetricMatrix gamma = covariance_estimate(data, config);
  return cv_select(data, config, lambda_grid(gamma, static_cast<std::size_t>(data.rows()), config.grid_size));
}

CvResult cv_select(const ClrMatrix& w, const EstimatorConfig& config) { return cv_select(w.values(), config); }

PdFloorResult pd_floor(const SymmetricMatrix& gamma, std::size_t n, const std::vector<double>& grid,
                       const EstimatorConfig& config) {
  if (grid.empty()) throw std::invalid_argument("pd_floor: empty lambda grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("pd_floor: grid must be ascending");

  std::vector<char> ok(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t g) {
    ok[g] = positive_definite(threshold_matrix(gamma, grid[g], n, config.rule, config.threshold_diagonal));
  });

  PdFloorResult out;
  out.qualifies.assign(ok.begin(), ok.end());
  const auto first = std::find(ok.begin(), ok.end(), 1);
  out.any_qualifies = first != ok.end();
  if (!out.any_qualifies) {
    out.grid = grid;
    out.warnings.push_back(
        "no lambda in the grid gives a positive definite estimate; using the full grid");
    return out;
  }
  out.suffix = std::all_of(first, ok.end(), [](char q) { return q != 0; });
  if (!out.suffix) {
    out.warnings.push_back(
        "positive definite lambdas do not form a suffix of the grid; keeping all lambdas above the first");
  }
  out.grid.assign(grid.begin() + (first - ok.begin()), grid.end());
  return out;
}

PdFloorResult pd_floor(const Matrix& data, const std::vector<double>& grid, const EstimatorConfig& config) {
  return pd_floor(covariance_estimate(data, config), static_cast<std::size_t>(data.rows()), grid, config);
}

EstimateResult estimate_from_logs(const Matrix& input, const EstimatorConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(input.rows());
  const auto p = static_cast<std::size_t>(input.cols());
  if (p < 2) throw std::invalid_argument("estimate: need at least 2 components");
  if (n < 2 * config.folds) {
    throw std::invalid_argument("estimate: need n >= 2V (n = " + std::to_string(n) +
                                ", V = " + std::to_string(config.folds) + ")");
  }

  Matrix shuffled;
  if (config.shuffle_blocks) {
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng = Rng::child(config.seed, {kShuffleStream});
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[static_cast<std::size_t>(rng.uniform_index(i + 1))]);
    }
    shuffled = select_rows(input, order);
  }
  const Matrix& data = config.shuffle_blocks ? shuffled : input;

  EstimateResult result;
  result.kind = config.kind;
  result.block_count = block_count_for(config, p, n);
  result.gamma_hat = covariance_estimate(data, config);
  if (needs_diagonal_floor(result.gamma_hat)) {
    result.warnings.push_back("covariance estimate has diagonal entries below 1e-12; floored for thresholds");
  }

  std::vector<double> grid = lambda_grid(result.gamma_hat, n, config.grid_size);
  if (config.enforce_pd) {
    PdFloorResult floor = pd_floor(result.gamma_hat, n, grid, config);
    result.warnings.insert(result.warnings.end(), floor.warnings.begin(), floor.warnings.end());
    grid = std::move(floor.grid);
  }

  const CvResult cv = cv_select(data, config, grid);
  result.lambda_star = cv.lambda_star;
  result.cv_curve = cv.curve;
  result.omega_hat =
      threshold_matrix(result.gamma_hat, result.lambda_star, n, config.rule, config.threshold_diagonal);
  result.min_eigenvalue = min_eigenvalue(result.omega_hat);
  return result;
}

EstimateResult estimate(const CompositionMatrix& x, const EstimatorConfig& config) {
  return estimate_from_logs(clr_transform(x).values(), config);
}

}  // namespace rcec
