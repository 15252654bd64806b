#pragma once

// Generalized thresholding rules and entry-adaptive matrix thresholding.

#include <string>
#include <string_view>
#include <variant>

#include "rcec/types.hpp"

namespace rcec {

struct SoftRule {
  friend bool operator==(const SoftRule&, const SoftRule&) = default;
};

// z (1 - |lambda / z|^eta)_+, eta >= 1.
struct AdaptiveLassoRule {
  double eta = 1.0;
  friend bool operator==(const AdaptiveLassoRule&, const AdaptiveLassoRule&) = default;
};

// Smoothly clipped absolute deviation, a > 2.
struct ScadRule {
  double a = 3.7;
  friend bool operator==(const ScadRule&, const ScadRule&) = default;
};

class ThresholdRule {
 public:
  using Variant = std::variant<SoftRule, AdaptiveLassoRule, ScadRule>;

  ThresholdRule() = default;

  static ThresholdRule soft() { return ThresholdRule(SoftRule{}); }
  static ThresholdRule adaptive_lasso(double eta);  // throws unless eta >= 1
  static ThresholdRule scad(double a = 3.7);        // throws unless a > 2

  // Accepts "soft", "alasso:<eta>", "scad:<a>" (and bare "alasso"/"scad",
  // meaning eta = 1 and a = 3.7).
  static ThresholdRule parse(std::string_view text);
  std::string to_string() const;

  const Variant& variant() const { return rule_; }
  double apply(double z, double lambda) const;

  friend bool operator==(const ThresholdRule&, const ThresholdRule&) = default;

 private:
  explicit ThresholdRule(Variant rule) : rule_(rule) {}
  Variant rule_ = SoftRule{};
};

inline double apply_rule(const ThresholdRule& rule, double z, double lambda) {
  return rule.apply(z, lambda);
}

// Variances below this are raised to it before taking square roots.
inline constexpr double kDiagonalFloor = 1e-12;

// True if any diagonal entry of gamma is below kDiagonalFloor.
bool needs_diagonal_floor(const SymmetricMatrix& gamma);

// lambda_ij = lambda * sqrt(g_ii g_jj ln(p) / n), with the diagonal of gamma
// floored at kDiagonalFloor. Throws std::invalid_argument on non-finite gamma,
// negative lambda, n < 2 or p < 2.
SymmetricMatrix entry_thresholds(const SymmetricMatrix& gamma, double lambda, std::size_t n);

// Applies the rule entrywise with entry_thresholds(gamma, lambda, n). The
// diagonal is copied unchanged unless threshold_diagonal is set.
SymmetricMatrix threshold_matrix(const SymmetricMatrix& gamma, double lambda, std::size_t n,
                                 const ThresholdRule& rule, bool threshold_diagonal = false);

}  // namespace rcec
