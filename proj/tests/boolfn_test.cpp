#include <gtest/gtest.h>

#include <random>

#include "compcc/boolfn.hpp"
#include "support/oracles.hpp"

namespace compcc {
namespace {

TEST(Mu, ConstantIsOneBlock) { EXPECT_EQ(mu(tables::constant(2, 0)), 1u); }

TEST(Mu, LastCoordinateAlternatesEveryInput) {
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(mu(tables::last_coordinate(n)), std::size_t{1} << n) << n;
}

TEST(Mu, AllOnesThresholdHasTwoBlocks) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(mu(tables::all_ones_threshold(n)), 2u);
}

TEST(Blocks, Examples) {
  const BlockDecomposition one = blocks(tables::constant(1, 1));
  EXPECT_TRUE(one.boundaries.empty());
  EXPECT_EQ(one.first_value, 1);

  const BlockDecomposition pi1 = blocks(tables::last_coordinate(1));
  EXPECT_EQ(pi1.boundaries, (std::vector<Input>{0}));
  EXPECT_EQ(pi1.first_value, 0);

  const BlockDecomposition d = blocks(TruthTable::from_string(2, "0110"));
  EXPECT_EQ(d.boundaries, (std::vector<Input>{0, 2}));
  EXPECT_EQ(d.first_value, 0);
}

TEST(Blocks, RoundTripAndCountProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const TruthTable tt = testing::random_table(n, rng);
    const BlockDecomposition d = blocks(tt);
    EXPECT_EQ(d.reconstruct(), tt);
    EXPECT_EQ(d.block_count(), mu(tt));
    EXPECT_EQ(mu(tt.complement()), mu(tt));
    EXPECT_EQ(mu(tt) == 1, tt.is_constant());
    EXPECT_LE(dcomp(tt), n);
  }
}

TEST(Dcomp, Examples) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(dcomp(tables::all_ones_threshold(n)), 1);
    EXPECT_EQ(dcomp(tables::last_coordinate(n)), n);
    EXPECT_EQ(dcomp(tables::constant(n, 1)), 0);
  }
}

TEST(TruthTable, RejectsBadShapes) {
  EXPECT_THROW(TruthTable(0, {0}), Error);
  EXPECT_THROW(TruthTable(21, {}), Error);
  EXPECT_THROW(TruthTable(2, {0, 1, 0}), Error);
  EXPECT_THROW(TruthTable(1, {0, 2}), Error);
  EXPECT_THROW(TruthTable::from_string(1, "0x"), Error);
}

TEST(CountByMu, FormulaInstances) {
  EXPECT_EQ(count_by_mu(1, 1), 2);
  EXPECT_EQ(count_by_mu(2, 4), 2);
}

TEST(CountByMu, MatchesEnumerationAtN3) {
  // Frozen from histogram_by_tables(3): every mu value over all 256 tables.
  const auto h = testing::histogram_by_tables(3);
  EXPECT_EQ(h.at(2), 14u);
  EXPECT_EQ(count_by_mu(3, 2), 14);
  for (const auto& [k, c] : h) EXPECT_EQ(count_by_mu(3, k), c) << k;
}

TEST(CountByMu, RejectsOutOfRange) {
  EXPECT_THROW(count_by_mu(2, 0), Error);
  EXPECT_THROW(count_by_mu(2, 5), Error);
}

TEST(CountMaxComplexity, FormulaInstances) {
  EXPECT_EQ(count_max_complexity(1), 2);
  EXPECT_EQ(count_max_complexity(2), 8);
  EXPECT_EQ(count_max_complexity(3), 128);
  EXPECT_EQ(count_max_complexity(6), BigInt(1) << 63);
}

TEST(CountMaxComplexity, EnumerationAtN3) {
  std::uint64_t hard = 0;
  for (std::uint64_t mask = 0; mask < 256; ++mask) hard += dcomp(TruthTable::from_mask(3, mask)) == 3;
  EXPECT_EQ(hard, 128u);
}

TEST(CountMaxComplexity, EqualsSumOverHighBlockCounts) {
  for (int n = 1; n <= 8; ++n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    BigInt sum = 0;
    for (std::uint64_t k = size / 2 + 1; k <= size; ++k) sum += count_by_mu(n, k);
    EXPECT_EQ(sum, count_max_complexity(n)) << n;
  }
}

TEST(EnumerateHistogram, SmallCases) {
  EXPECT_EQ(enumerate_histogram(1), (std::map<std::size_t, std::uint64_t>{{1, 2}, {2, 2}}));
  EXPECT_EQ(enumerate_histogram(2), (std::map<std::size_t, std::uint64_t>{{1, 2}, {2, 6}, {3, 6}, {4, 2}}));
}

TEST(EnumerateHistogram, AgreesWithDefinitionAndSumsToAllFunctions) {
  for (int n = 1; n <= 4; ++n) {
    const auto h = enumerate_histogram(n);
    EXPECT_EQ(h, testing::histogram_by_tables(n));
    std::uint64_t total = 0;
    for (const auto& [k, c] : h) total += c;
    EXPECT_EQ(total, std::uint64_t{1} << (1U << n));
  }
}

TEST(EnumerateHistogram, CapExceeded) {
  try {
    enumerate_histogram(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cap_exceeded);
  }
}

}  // namespace
}  // namespace compcc
