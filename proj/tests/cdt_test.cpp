#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "compcc/cdt.hpp"
#include "support/oracles.hpp"

namespace compcc {
namespace {

std::set<Input> thresholds_of(const ComparisonTree& t) {
  std::set<Input> s;
  for (const TreeNode& v : t.nodes()) {
    if (v.kind == QueryKind::threshold) s.insert(v.threshold);
  }
  return s;
}

TEST(Eval, Basics) {
  EXPECT_EQ(ComparisonTree::leaf(3, 0).eval(5), 0);

  const Input top = 7;
  const ComparisonTree t(3, {{QueryKind::threshold, top, 0, 1, 2}, {QueryKind::leaf, 0, 0, 0, 0},
                             {QueryKind::leaf, 0, 1, 0, 0}});
  EXPECT_EQ(t.eval(top), 1);
  EXPECT_EQ(t.eval(top - 1), 0);

  const ComparisonTree z(2, {{QueryKind::const_zero, 0, 0, 1, 2}, {QueryKind::leaf, 0, 1, 0, 0},
                             {QueryKind::leaf, 0, 0, 0, 0}});
  for (Input y = 0; y < 4; ++y) EXPECT_EQ(z.eval(y), 1);
}

TEST(ComparisonTree, RejectsMalformed) {
  // child pointing backwards
  EXPECT_THROW(ComparisonTree(1, {{QueryKind::threshold, 1, 0, 0, 1}, {QueryKind::leaf, 0, 0, 0, 0}}), Error);
  // shared child
  EXPECT_THROW(ComparisonTree(1, {{QueryKind::threshold, 1, 0, 1, 1}, {QueryKind::leaf, 0, 0, 0, 0}}), Error);
  // threshold beyond 2^n - 1
  EXPECT_THROW(ComparisonTree(1, {{QueryKind::threshold, 2, 0, 1, 2}, {QueryKind::leaf, 0, 0, 0, 0},
                                  {QueryKind::leaf, 0, 0, 0, 0}}),
               Error);
  // orphan node
  EXPECT_THROW(ComparisonTree(1, {{QueryKind::leaf, 0, 0, 0, 0}, {QueryKind::leaf, 0, 0, 0, 0}}), Error);
}

TEST(BuildTree, Constant) {
  const ComparisonTree t = build_tree(tables::constant(3, 0));
  EXPECT_EQ(t.nodes().size(), 1u);
  EXPECT_EQ(t.depth(), 0);
}

TEST(BuildTree, AllOnesThresholdIsOneQuery) {
  for (int n = 1; n <= 6; ++n) {
    const ComparisonTree t = build_tree(tables::all_ones_threshold(n));
    EXPECT_EQ(t.depth(), 1);
    EXPECT_EQ(t.leaf_count(), 2u);
    EXPECT_EQ(t.node(0).threshold, (Input{1} << n) - 1);
  }
}

TEST(BuildTree, LastCoordinateN2) {
  const ComparisonTree t = build_tree(TruthTable::from_string(2, "0101"));
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.leaf_count(), 4u);
  EXPECT_EQ(thresholds_of(t), (std::set<Input>{1, 2, 3}));
}

TEST(BuildTree, ExhaustiveUpToN3) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
      const TruthTable tt = TruthTable::from_mask(n, mask);
      const ComparisonTree t = build_tree(tt);
      const TreeVerdict v = verify_tree(t, tt);
      ASSERT_TRUE(v.correct) << tt.to_string();
      EXPECT_EQ(v.depth, dcomp(tt));
      EXPECT_EQ(t.leaf_count(), mu(tt));
    }
  }
}

TEST(BuildTree, ThresholdsAreExactlyTheBoundariesPlusOne) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const TruthTable tt = testing::random_table(n, rng);
    const ComparisonTree t = build_tree(tt);
    std::set<Input> expected;
    for (const Input b : blocks(tt).boundaries) expected.insert(b + 1);
    EXPECT_EQ(thresholds_of(t), expected);
    EXPECT_TRUE(verify_tree(t, tt).correct);
    EXPECT_LE(t.leaf_count(), std::size_t{1} << t.depth());
    for (const TreeNode& v : t.nodes()) EXPECT_NE(v.kind, QueryKind::const_zero);
  }
}

TEST(VerifyTree, DetectsWrongLeaf) {
  const TreeVerdict v = verify_tree(ComparisonTree::leaf(2, 0), tables::constant(2, 1));
  EXPECT_FALSE(v.correct);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, 0u);
}

TEST(VerifyTree, ArityMismatch) {
  EXPECT_THROW(verify_tree(ComparisonTree::leaf(2, 0), tables::constant(3, 0)), Error);
}

TEST(TrivialTree, ShapeAndCorrectness) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    const TruthTable tt = testing::random_table(n, rng);
    const ComparisonTree t = trivial_tree(tt);
    const TreeVerdict v = verify_tree(t, tt);
    EXPECT_TRUE(v.correct);
    EXPECT_EQ(v.depth, n);
    EXPECT_EQ(t.leaf_count(), std::size_t{1} << n);
  }
  EXPECT_EQ(trivial_tree(tables::constant(3, 0)).depth(), 3);
}

TEST(MinDepthOracle, Examples) {
  EXPECT_EQ(min_depth_oracle(tables::constant(4, 1)), 0);
  EXPECT_EQ(min_depth_oracle(tables::last_coordinate(1)), 1);
  EXPECT_EQ(min_depth_oracle(tables::last_coordinate(2)), 2);
}

TEST(MinDepthOracle, MatchesFormulaExhaustivelyUpToN3) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
      const TruthTable tt = TruthTable::from_mask(n, mask);
      ASSERT_EQ(min_depth_oracle(tt), dcomp(tt)) << tt.to_string();
    }
  }
}

TEST(MinDepthOracle, MatchesFormulaOnSampledN6) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    // Vary the block count by thresholding a random walk.
    const double p = 0.02 + 0.5 * (trial % 10) / 10.0;
    std::bernoulli_distribution flip(p);
    Bit cur = 0;
    const TruthTable tt = TruthTable::from_function(6, [&](Input) {
      if (flip(rng)) cur ^= 1U;
      return cur;
    });
    EXPECT_EQ(min_depth_oracle(tt), dcomp(tt)) << tt.to_string();
  }
}

TEST(MinDepthOracle, CapExceeded) {
  EXPECT_THROW(min_depth_oracle(tables::constant(7, 0)), Error);
}

}  // namespace
}  // namespace compcc
