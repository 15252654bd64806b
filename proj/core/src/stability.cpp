#include "rcec/stability.hpp"

#include <cmath>
#include <stdexcept>

#include "rcec/parallel.hpp"
#include "rcec/random.hpp"
#include "rcec/threshold.hpp"

namespace rcec {

std::size_t SupportSet::positives() const {
  std::size_t count = 0;
  for (const auto& e : edges) count += e.sign > 0 ? 1 : 0;
  return count;
}

std::size_t SupportSet::negatives() const {
  std::size_t count = 0;
  for (const auto& e : edges) count += e.sign < 0 ? 1 : 0;
  return count;
}

SupportSet extract_edges(const SymmetricMatrix& omega_hat) {
  SupportSet out;
  const Index p = omega_hat.dim();
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double w = omega_hat(i, j);
      if (w == 0.0) continue;
      Edge e;
      e.i = i;
      e.j = j;
      e.sign = w > 0.0 ? 1 : -1;
      e.weight = w;
      const double var = omega_hat(i, i) * omega_hat(j, j);
      e.correlation = var > 0.0 ? w / std::sqrt(var) : 0.0;
      out.edges.push_back(e);
    }
  }
  return out;
}

SupportSet retain_edges(const SupportSet& counted, std::size_t retain_threshold) {
  SupportSet out;
  for (const auto& e : counted.edges) {
    if (e.occurrences >= retain_threshold) out.edges.push_back(e);
  }
  return out;
}

StabilityResult bootstrap_stability(const CompositionMatrix& x, const EstimatorConfig& config,
                                    const StabilityOptions& options) {
  const std::size_t B = options.replicates;
  if (B < 1) throw std::invalid_argument("bootstrap_stability: need at least one replicate");
  if (options.retain_threshold > B + 1) {
    throw std::invalid_argument("bootstrap_stability: retain threshold exceeds B + 1");
  }

  StabilityResult result;
  result.baseline = estimate(x, config);
  result.baseline_edges = extract_edges(result.baseline.omega_hat);

  const auto n = static_cast<std::size_t>(x.n());
  const ClrMatrix w = clr_transform(x);

  // Per replicate: the omega estimate, or empty on failure.
  std::vector<SymmetricMatrix> replicate_omega(B);
  std::vector<std::string> failures(B);
  parallel_for(B, [&](std::size_t b) {
    Matrix rows = w.values();
    if (!options.self_replicate) {
      Rng rng = Rng::child(options.seed, {b});
      for (std::size_t k = 0; k < n; ++k) {
        rows.row(static_cast<Index>(k)) = w.values().row(static_cast<Index>(rng.uniform_index(n)));
      }
    }
    try {
      if (options.reuse_lambda) {
        const SymmetricMatrix gamma = covariance_estimate(rows, config);
        replicate_omega[b] =
            threshold_matrix(gamma, result.baseline.lambda_star, n, config.rule, config.threshold_diagonal);
      } else {
        replicate_omega[b] = estimate_from_logs(rows, config).omega_hat;
      }
    } catch (const std::exception& e) {
      failures[b] = e.what();
    }
  });

  for (std::size_t b = 0; b < B; ++b) {
    if (!failures[b].empty()) {
      ++result.failed_replicates;
      result.warnings.push_back("replicate " + std::to_string(b) + " failed: " + failures[b]);
      continue;
    }
    for (auto& e : result.baseline_edges.edges) {
      const double v = replicate_omega[b](e.i, e.j);
      if (v == 0.0) continue;
      ++e.occurrences;
      if ((v > 0.0 ? 1 : -1) == e.sign) ++e.sign_agreements;
    }
  }

  double sum = 0.0;
  for (const auto& e : result.baseline_edges.edges) {
    sum += static_cast<double>(e.occurrences) / static_cast<double>(B);
  }
  const auto edge_count = result.baseline_edges.edges.size();
  if (edge_count == 0) {
    result.warnings.push_back("baseline estimate has no edges; stability score reported as 0");
  }
  result.stability_score = edge_count == 0 ? 0.0 : sum / static_cast<double>(edge_count);
  result.stable_edges = retain_edges(result.baseline_edges, options.retain_threshold);
  result.positive_count = result.stable_edges.positives();
  result.negative_count = result.stable_edges.negatives();
  return result;
}

}  // namespace rcec
