#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "rcec/threshold.hpp"

namespace rcec {
namespace {

std::vector<ThresholdRule> all_rules() {
  return {ThresholdRule::soft(), ThresholdRule::adaptive_lasso(1.0), ThresholdRule::adaptive_lasso(2.0),
          ThresholdRule::adaptive_lasso(4.0), ThresholdRule::scad(3.7)};
}

struct Triple {
  double z;
  double lambda;
  double y;
};

std::vector<Triple> random_triples(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  std::uniform_real_distribution<double> lambda(0.0, 5.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Triple> out;
  for (int k = 0; k < count; ++k) {
    const double l = lambda(gen);
    const double zz = z(gen);
    out.push_back({zz, l, zz + l * unit(gen)});
  }
  return out;
}

double sgn(double v) { return (v > 0) - (v < 0); }

TEST(ApplyRule, Soft) {
  const auto rule = ThresholdRule::soft();
  EXPECT_DOUBLE_EQ(apply_rule(rule, 3, 2), 1);
  EXPECT_DOUBLE_EQ(apply_rule(rule, -3, 2), -1);
  EXPECT_DOUBLE_EQ(apply_rule(rule, 1.5, 2), 0);
}

TEST(ApplyRule, AdaptiveLasso) {
  const auto rule = ThresholdRule::adaptive_lasso(2.0);
  EXPECT_NEAR(apply_rule(rule, 3, 2), 5.0 / 3.0, 1e-12);
  EXPECT_EQ(apply_rule(rule, 0, 2), 0.0);
  EXPECT_EQ(apply_rule(rule, 0, 0), 0.0);
}

TEST(ApplyRule, ScadRegions) {
  const auto rule = ThresholdRule::scad(3.7);
  EXPECT_NEAR(apply_rule(rule, 3, 1), (2.7 * 3 - 3.7) / 1.7, 1e-12);
  EXPECT_NEAR(apply_rule(rule, 3, 1), 2.5882, 1e-4);
  EXPECT_DOUBLE_EQ(apply_rule(rule, 1.5, 1), 0.5);
  EXPECT_DOUBLE_EQ(apply_rule(rule, -5, 1), -5);
}

TEST(ThresholdRule, ParameterValidation) {
  EXPECT_THROW(ThresholdRule::adaptive_lasso(0.5), std::invalid_argument);
  EXPECT_THROW(ThresholdRule::scad(2.0), std::invalid_argument);
}

TEST(ThresholdRule, ParseAndPrint) {
  EXPECT_EQ(ThresholdRule::parse("soft"), ThresholdRule::soft());
  EXPECT_EQ(ThresholdRule::parse("alasso:2"), ThresholdRule::adaptive_lasso(2));
  EXPECT_EQ(ThresholdRule::parse("scad:3.7"), ThresholdRule::scad(3.7));
  EXPECT_EQ(ThresholdRule::parse("scad"), ThresholdRule::scad(3.7));
  EXPECT_EQ(ThresholdRule::scad(3.7).to_string(), "scad:3.7");
  EXPECT_EQ(ThresholdRule::adaptive_lasso(0.1 + 1.9).to_string(), "alasso:2");
  for (const auto& r : all_rules()) EXPECT_EQ(ThresholdRule::parse(r.to_string()), r);
  EXPECT_THROW(ThresholdRule::parse("hard"), std::invalid_argument);
  EXPECT_THROW(ThresholdRule::parse("alasso:x"), std::invalid_argument);
  EXPECT_THROW(ThresholdRule::parse("scad:1.5"), std::invalid_argument);
}

TEST(ThresholdProperties, ZeroBelowLambda) {
  for (const auto& rule : all_rules()) {
    for (const auto& t : random_triples(1, 10000)) {
      const double z = std::clamp(t.z, -t.lambda, t.lambda);
      EXPECT_EQ(rule.apply(z, t.lambda), 0.0) << rule.to_string();
    }
  }
}

TEST(ThresholdProperties, ShrinkageBoundedByLambda) {
  for (const auto& rule : all_rules()) {
    for (const auto& t : random_triples(2, 10000)) {
      const double rounding = 4 * std::numeric_limits<double>::epsilon() * std::abs(t.z);
      EXPECT_LE(std::abs(rule.apply(t.z, t.lambda) - t.z), t.lambda + rounding) << rule.to_string();
    }
  }
}

TEST(ThresholdProperties, SoftRuleBoundedByNearbyValues) {
  for (const auto& rule : {ThresholdRule::soft(), ThresholdRule::adaptive_lasso(1.0)}) {
    for (const auto& t : random_triples(3, 10000)) {
      EXPECT_LE(std::abs(rule.apply(t.z, t.lambda)), std::abs(t.y) + 1e-12) << rule.to_string();
    }
  }
}

// Adaptive lasso with eta > 1 and SCAD satisfy |tau(z)| <= c |y| for
// |y - z| <= lambda only with a rule-dependent constant: c = eta and
// c = a / (a - 1) respectively.
TEST(ThresholdProperties, NonSoftRulesBoundedUpToConstant) {
  struct Case {
    ThresholdRule rule;
    double c;
  };
  for (const auto& [rule, c] : {Case{ThresholdRule::adaptive_lasso(2.0), 2.0},
                                Case{ThresholdRule::adaptive_lasso(4.0), 4.0},
                                Case{ThresholdRule::scad(3.7), 3.7 / 2.7}}) {
    for (const auto& t : random_triples(4, 10000)) {
      EXPECT_LE(std::abs(rule.apply(t.z, t.lambda)), c * std::abs(t.y) + 1e-12) << rule.to_string();
    }
  }
  // With c = 1 the bound fails for these rules, e.g. eta = 2, z = 3, lambda = 2, y = 1.
  EXPECT_GT(ThresholdRule::adaptive_lasso(2.0).apply(3, 2), 1.0);
}

TEST(ThresholdProperties, SignPreservedOrZero) {
  for (const auto& rule : all_rules()) {
    for (const auto& t : random_triples(5, 10000)) {
      const double s = sgn(rule.apply(t.z, t.lambda));
      EXPECT_TRUE(s == 0 || s == sgn(t.z));
    }
  }
}

TEST(ThresholdProperties, AdaptiveLassoEtaOneIsSoft) {
  const auto soft = ThresholdRule::soft();
  const auto alasso = ThresholdRule::adaptive_lasso(1.0);
  for (const auto& t : random_triples(6, 10000)) {
    EXPECT_NEAR(alasso.apply(t.z, t.lambda), soft.apply(t.z, t.lambda), 1e-12);
  }
}

TEST(ThresholdProperties, MagnitudeNonIncreasingInLambda) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> lambda(0.0, 5.0);
  for (const auto& rule : all_rules()) {
    for (const auto& t : random_triples(8, 5000)) {
      double l1 = lambda(gen);
      double l2 = lambda(gen);
      if (l1 > l2) std::swap(l1, l2);
      EXPECT_GE(std::abs(rule.apply(t.z, l1)) + 1e-12, std::abs(rule.apply(t.z, l2))) << rule.to_string();
    }
  }
}

TEST(EntryThresholds, ZeroLambda) {
  const auto t = entry_thresholds(SymmetricMatrix::identity(3), 0.0, 10);
  EXPECT_EQ(t.values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(EntryThresholds, HandExample) {
  // g_ii = g_jj = 4, lambda = 0.5, ln(p)/n = 0.01 gives lambda_ij = 0.2. An
  // integer n cannot make ln(3)/n exactly 0.01, so lambda absorbs the rounding.
  const double exact_n = 100.0 * std::log(3.0);
  const auto n = static_cast<std::size_t>(std::round(exact_n));
  const double lambda = 0.5 * std::sqrt(static_cast<double>(n) / exact_n);
  const auto t = entry_thresholds(SymmetricMatrix(Matrix(Matrix::Identity(3, 3) * 4.0)), lambda, n);
  EXPECT_NEAR(t(0, 1), 0.2, 1e-12);
  EXPECT_NEAR(t(1, 2), 0.2, 1e-12);
}

TEST(EntryThresholds, RejectsBadInput) {
  Matrix g = Matrix::Identity(2, 2);
  g(0, 1) = g(1, 0) = NAN;
  EXPECT_THROW(entry_thresholds(SymmetricMatrix(g), 1.0, 10), std::invalid_argument);
  EXPECT_THROW(entry_thresholds(SymmetricMatrix(Matrix::Identity(2, 2)), -1.0, 10), std::invalid_argument);
  EXPECT_THROW(entry_thresholds(SymmetricMatrix(Matrix::Identity(2, 2)), 1.0, 1), std::invalid_argument);
}

TEST(EntryThresholds, FloorsNonPositiveDiagonal) {
  Matrix g(2, 2);
  g << -5, 0.1, 0.1, 1;
  const auto t = entry_thresholds(SymmetricMatrix(g), 1.0, 10);
  EXPECT_TRUE(std::isfinite(t(0, 1)));
  EXPECT_TRUE(needs_diagonal_floor(SymmetricMatrix(g)));
}

TEST(ThresholdMatrix, ZeroLambdaIsIdentityMap) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> d;
  Matrix a(4, 4);
  for (Index k = 0; k < a.size(); ++k) a.data()[k] = d(gen);
  Matrix g = a * a.transpose();
  const auto gamma = SymmetricMatrix::symmetrize(g);
  for (const auto& rule : all_rules()) {
    EXPECT_TRUE(threshold_matrix(gamma, 0.0, 20, rule) == gamma) << rule.to_string();
  }
}

TEST(ThresholdMatrix, LargeLambdaLeavesDiagonal) {
  Matrix g(3, 3);
  g << 2, 0.5, -0.3, 0.5, 1, 0.2, -0.3, 0.2, 3;
  const auto out = threshold_matrix(SymmetricMatrix(g), 1e6, 50, ThresholdRule::soft());
  EXPECT_TRUE(out == SymmetricMatrix(Matrix(g.diagonal().asDiagonal())));
}

TEST(ThresholdMatrix, SoftHandExample) {
  // Gamma = [[4,1],[1,4]], lambda_12 = 0.2 -> 0.8.
  Matrix g(3, 3);
  g << 4, 1, 0, 1, 4, 0, 0, 0, 4;
  const double n = 100.0 * std::log(3.0);
  const double lambda = 0.5 * std::sqrt(std::round(n) / n);
  const auto out = threshold_matrix(SymmetricMatrix(g), lambda, static_cast<std::size_t>(std::round(n)),
                                    ThresholdRule::soft());
  EXPECT_NEAR(out(0, 1), 0.8, 1e-12);
  EXPECT_EQ(out(0, 0), 4.0);
}

TEST(ThresholdMatrix, DiagonalSwitch) {
  Matrix g(2, 2);
  g << 1, 0.1, 0.1, 1;
  const auto kept = threshold_matrix(SymmetricMatrix(g), 3.0, 10, ThresholdRule::soft(), false);
  const auto shrunk = threshold_matrix(SymmetricMatrix(g), 3.0, 10, ThresholdRule::soft(), true);
  EXPECT_EQ(kept(0, 0), 1.0);
  EXPECT_LT(shrunk(0, 0), 1.0);
}

}  // namespace
}  // namespace rcec
