#include <gtest/gtest.h>

#include "rcec/simgen.hpp"
#include "rcec/stability.hpp"

namespace rcec {
namespace {

CompositionMatrix sample_composition(std::uint64_t seed, std::size_t n, std::size_t p) {
  return basis_to_composition(sample_case(SimulationCase::gaussian(), build_omega0(p), n, seed));
}

TEST(ExtractEdges, HandExample) {
  Matrix m(3, 3);
  m << 1, 0.5, 0, 0.5, 4, -1, 0, -1, 1;
  const auto s = extract_edges(SymmetricMatrix(m));
  ASSERT_EQ(s.edges.size(), 2u);
  EXPECT_EQ(s.edges[0].i, 0);
  EXPECT_EQ(s.edges[0].j, 1);
  EXPECT_EQ(s.edges[0].sign, 1);
  EXPECT_DOUBLE_EQ(s.edges[0].correlation, 0.25);
  EXPECT_EQ(s.edges[1].i, 1);
  EXPECT_EQ(s.edges[1].j, 2);
  EXPECT_EQ(s.edges[1].sign, -1);
  EXPECT_DOUBLE_EQ(s.edges[1].weight, -1.0);
  EXPECT_DOUBLE_EQ(s.edges[1].correlation, -0.5);
  EXPECT_EQ(s.positives(), 1u);
  EXPECT_EQ(s.negatives(), 1u);
}

TEST(ExtractEdges, DiagonalMatrixHasNoEdges) {
  EXPECT_TRUE(extract_edges(SymmetricMatrix::identity(5)).edges.empty());
}

TEST(ExtractEdges, NonPositiveVarianceGivesZeroCorrelation) {
  Matrix m(2, 2);
  m << 0, 0.3, 0.3, 1;
  EXPECT_EQ(extract_edges(SymmetricMatrix(m)).edges[0].correlation, 0.0);
}

TEST(RetainEdges, Threshold) {
  SupportSet s;
  for (std::size_t k = 0; k < 4; ++k) {
    Edge e;
    e.i = 0;
    e.j = static_cast<Index>(k + 1);
    e.sign = 1;
    e.occurrences = k * 2;
    s.edges.push_back(e);
  }
  EXPECT_EQ(retain_edges(s, 0).edges.size(), 4u);
  EXPECT_EQ(retain_edges(s, 3).edges.size(), 2u);
  EXPECT_EQ(retain_edges(s, 7).edges.size(), 0u);
}

TEST(Bootstrap, SelfReplicateIsFullyStable) {
  const auto x = sample_composition(1, 60, 12);
  StabilityOptions options;
  options.replicates = 1;
  options.retain_threshold = 1;
  options.self_replicate = true;
  const auto r = bootstrap_stability(x, EstimatorConfig{}, options);
  ASSERT_FALSE(r.baseline_edges.edges.empty());
  EXPECT_DOUBLE_EQ(r.stability_score, 1.0);
  EXPECT_EQ(r.stable_edges.edges.size(), r.baseline_edges.edges.size());
  for (const auto& e : r.baseline_edges.edges) EXPECT_EQ(e.sign_agreements, 1u);
  EXPECT_EQ(r.positive_count + r.negative_count, r.stable_edges.edges.size());
}

TEST(Bootstrap, ThresholdAboveReplicatesKeepsNothing) {
  const auto x = sample_composition(2, 60, 10);
  StabilityOptions options;
  options.replicates = 4;
  options.retain_threshold = 5;
  options.reuse_lambda = true;
  const auto r = bootstrap_stability(x, EstimatorConfig{}, options);
  EXPECT_TRUE(r.stable_edges.edges.empty());
  EXPECT_EQ(r.positive_count, 0u);
  EXPECT_EQ(r.negative_count, 0u);
}

TEST(Bootstrap, StableSetShrinksAsThresholdGrows) {
  const auto x = sample_composition(3, 60, 10);
  StabilityOptions options;
  options.replicates = 6;
  options.reuse_lambda = true;
  std::size_t previous = static_cast<std::size_t>(-1);
  for (std::size_t t = 0; t <= 7; ++t) {
    options.retain_threshold = t;
    const auto r = bootstrap_stability(x, EstimatorConfig{}, options);
    EXPECT_LE(r.stable_edges.edges.size(), previous);
    previous = r.stable_edges.edges.size();
    EXPECT_GE(r.stability_score, 0.0);
    EXPECT_LE(r.stability_score, 1.0);
  }
}

TEST(Bootstrap, SeededAndReproducible) {
  const auto x = sample_composition(4, 60, 10);
  StabilityOptions options;
  options.replicates = 5;
  options.retain_threshold = 3;
  const auto a = bootstrap_stability(x, EstimatorConfig{}, options);
  const auto b = bootstrap_stability(x, EstimatorConfig{}, options);
  ASSERT_EQ(a.baseline_edges.edges.size(), b.baseline_edges.edges.size());
  for (std::size_t k = 0; k < a.baseline_edges.edges.size(); ++k) {
    EXPECT_EQ(a.baseline_edges.edges[k].occurrences, b.baseline_edges.edges[k].occurrences);
  }
  EXPECT_EQ(a.stability_score, b.stability_score);
}

TEST(Bootstrap, RejectsBadOptions) {
  const auto x = sample_composition(5, 40, 6);
  StabilityOptions options;
  options.replicates = 0;
  EXPECT_THROW(bootstrap_stability(x, EstimatorConfig{}, options), std::invalid_argument);
  options.replicates = 3;
  options.retain_threshold = 5;
  EXPECT_THROW(bootstrap_stability(x, EstimatorConfig{}, options), std::invalid_argument);
}

}  // namespace
}  // namespace rcec
