#pragma once

// Simulation benchmark: loss and support-recovery summaries per
// (case, p, estimator).

#include <cstdint>
#include <string>
#include <vector>

#include "rcec/tuning.hpp"

namespace rcec::cli {

struct BenchmarkSpec {
  std::vector<int> cases{1, 2, 3, 4};
  std::size_t n = 100;
  std::vector<std::size_t> p_list{50, 100, 200};
  std::size_t replications = 200;
  // Any of "rcec", "coat", "oracle". The oracle applies the rcec pipeline to
  // the latent log-abundances instead of the clr coordinates.
  std::vector<std::string> estimators{"rcec", "coat", "oracle"};
  std::uint64_t seed = 1;
  // Replace Omega0 by its diagonal (no true edges); a smoke test for the
  // degenerate-support path.
  bool diagonal_omega = false;

  void validate() const;
};

struct ReplicationRecord {
  int case_number = 0;
  std::size_t p = 0;
  std::string estimator;
  std::size_t replication = 0;
  double l1 = 0.0;
  double spectral = 0.0;
  double frobenius = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  bool tpr_degenerate = false;
  bool fpr_degenerate = false;
  double lambda_star = 0.0;
};

struct SummaryRow {
  int case_number = 0;
  std::size_t p = 0;
  std::string estimator;
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation across replications
  std::size_t replications = 0;
  std::uint64_t seed = 0;
};

struct BenchmarkResult {
  std::vector<ReplicationRecord> records;  // ordered by case, p, replication, estimator
  std::vector<SummaryRow> summary;         // ordered by case, p, estimator, metric
};

// Metric names, in output order.
const std::vector<std::string>& benchmark_metrics();

// Replication r of (case, p) draws its data from Rng::child(seed, {case, p, r, 0})
// and its cross-validation seed from Rng::child(seed, {case, p, r, 1}); every estimator
// of a replication sees the same data and folds. Replications run in parallel
// and are reduced in order.
BenchmarkResult run_benchmark(const BenchmarkSpec& spec, const EstimatorConfig& base);

std::string summary_csv(const BenchmarkResult& result);
std::string summary_markdown(const BenchmarkResult& result, const BenchmarkSpec& spec);
std::string replications_csv(const BenchmarkResult& result);

}  // namespace rcec::cli
