#pragma once

// Edge extraction and bootstrap stability of an estimated co-occurrence
// network.

#include <cstdint>
#include <string>
#include <vector>

#include "rcec/compdata.hpp"
#include "rcec/tuning.hpp"

namespace rcec {

struct Edge {
  Index i = 0;  // i < j
  Index j = 0;
  int sign = 0;              // +1 or -1
  double weight = 0.0;       // covariance-scale estimate
  double correlation = 0.0;  // weight / sqrt(w_ii w_jj), 0 if a variance is not positive
  std::size_t occurrences = 0;      // bootstrap replicates containing (i, j)
  std::size_t sign_agreements = 0;  // of those, replicates with the same sign
};

struct SupportSet {
  std::vector<Edge> edges;  // ordered by (i, j)

  std::size_t positives() const;
  std::size_t negatives() const;
};

// All off-diagonal pairs with a nonzero estimate.
SupportSet extract_edges(const SymmetricMatrix& omega_hat);

struct StabilityOptions {
  std::size_t replicates = 100;       // B
  std::size_t retain_threshold = 50;  // keep edges seen in at least this many replicates
  std::uint64_t seed = 1;
  // Reuse the baseline lambda* instead of cross-validating each replicate.
  bool reuse_lambda = false;
  // Test hook: every replicate is the original sample, unresampled.
  bool self_replicate = false;
};

struct StabilityResult {
  EstimateResult baseline;
  SupportSet baseline_edges;  // with occurrence counts filled in
  SupportSet stable_edges;
  double stability_score = 0.0;  // mean occurrence fraction over baseline edges
  std::size_t positive_count = 0;
  std::size_t negative_count = 0;
  std::size_t failed_replicates = 0;
  std::vector<std::string> warnings;
};

// Re-estimates on B bootstrap resamples (rows drawn with replacement, each
// replicate on its own child stream of options.seed) and counts how often each
// baseline edge reappears, regardless of sign. Replicates whose estimation
// fails count as containing no edges and add a warning.
// Throws std::invalid_argument unless B >= 1 and retain_threshold <= B + 1.
StabilityResult bootstrap_stability(const CompositionMatrix& x, const EstimatorConfig& config,
                                    const StabilityOptions& options);

// Edges of `counted` seen in at least `retain_threshold` replicates.
SupportSet retain_edges(const SupportSet& counted, std::size_t retain_threshold);

}  // namespace rcec
