#include <gtest/gtest.h>

#include <random>

#include "compcc/rectpart.hpp"
#include "support/oracles.hpp"

namespace compcc {
namespace {

const CellRegion kL = CellRegion::from_rows({"#.", "##"});
const CellRegion kPlus = CellRegion::from_rows({".#.", "###", ".#."});
// Ring around (1,1) whose hole touches the outside at a pinch point (1,1).
const CellRegion kPinchedRing = CellRegion::from_rows({".##", "#.#", "###"});

void expect_valid_partition(const CellRegion& region, const RectPartition& p) {
  std::vector<int> cover(region.height() * region.width(), 0);
  for (const GeoRect& r : p.rects) {
    ASSERT_TRUE(r.fits(region.height(), region.width()));
    for (std::size_t x = r.x_lo; x <= r.x_hi; ++x) {
      for (std::size_t y = r.y_lo; y <= r.y_hi; ++y) ++cover[x * region.width() + y];
    }
  }
  for (std::size_t i = 0; i < cover.size(); ++i) ASSERT_EQ(cover[i], region.cells()[i]) << "cell " << i;
}

TEST(Components, Examples) {
  EXPECT_EQ(components(CellRegion::from_rows({"###", "###"})).size(), 1u);
  EXPECT_EQ(components(CellRegion::from_rows({"#.", ".#"})).size(), 2u);
  EXPECT_TRUE(components(CellRegion(3, 3)).empty());
  const auto parts = components(CellRegion::from_rows({"#.#", "#..", "..#"}));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], CellRegion::from_rows({"#..", "#..", "..."}));
}

TEST(ReflexVertices, Examples) {
  EXPECT_TRUE(reflex_vertices(CellRegion::from_rows({"###", "###"})).empty());

  const auto l = reflex_vertices(kL);
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l[0].at, (LatticePoint{1, 1}));
  EXPECT_EQ(l[0].multiplicity, 1);

  const auto ring = reflex_vertices(kPinchedRing);
  std::size_t pinches = 0;
  for (const auto& rv : ring) {
    if (rv.multiplicity == 2) {
      ++pinches;
      EXPECT_EQ(rv.at, (LatticePoint{1, 1}));
    }
  }
  EXPECT_EQ(pinches, 1u);
  EXPECT_EQ(ring.size(), 4u);  // three concave corners plus the pinch
}

TEST(PinchPoint, NeedsNoExtraCut) {
  // Oracle value: the diagonal cells (0,1) and (1,0) can never share a
  // rectangle, and the rest needs two more.
  EXPECT_EQ(min_partition_oracle(kPinchedRing), 4u);
  const RectPartition p = min_partition(kPinchedRing);
  expect_valid_partition(kPinchedRing, p);
  EXPECT_EQ(p.size(), 4u);
}

TEST(MaxIndependentChords, SmallGraphs) {
  EXPECT_EQ(max_independent_chords(ChordGraph{}).size(), 0u);

  ChordGraph crossing;
  crossing.h_chords.push_back({{2, 0}, {2, 4}});
  crossing.v_chords.push_back({{0, 2}, {4, 2}});
  crossing.crossings.emplace_back(0, 0);
  EXPECT_EQ(max_independent_chords(crossing).size(), 1u);

  ChordGraph parallel;
  parallel.h_chords.push_back({{1, 0}, {1, 3}});
  parallel.h_chords.push_back({{2, 0}, {2, 3}});
  EXPECT_EQ(max_independent_chords(parallel).size(), 2u);
}

TEST(MaxIndependentChords, SelectionIsIndependentAndKonigSized) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const CellRegion region = testing::random_region(8, 8, rng, 0.75);
    const ChordGraph g = chord_graph(region);
    const ChordSelection sel = max_independent_chords(g);
    for (const std::size_t h : sel.h) {
      for (const std::size_t v : sel.v) EXPECT_FALSE(chords_cross(g.h_chords[h], g.v_chords[v]));
    }
    // Brute force over subsets when small enough.
    const std::size_t total = g.h_chords.size() + g.v_chords.size();
    if (total <= 14) {
      std::size_t best = 0;
      for (std::uint32_t mask = 0; mask < (1U << total); ++mask) {
        bool ok = true;
        for (const auto& [h, v] : g.crossings) {
          if ((mask >> h & 1U) && (mask >> (g.h_chords.size() + v) & 1U)) ok = false;
        }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
      }
      EXPECT_EQ(sel.size(), best);
    }
  }
}

TEST(ChordGraph, ChordsJoinReflexVerticesThroughTheInterior) {
  // Two one-cell holes stacked vertically: their facing corners are joined
  // by two vertical chords, and no horizontal segment links reflex corners.
  const CellRegion holes = CellRegion::from_rows({"#####", "##.##", "#####", "##.##", "#####"});
  const ChordGraph g = chord_graph(holes);
  EXPECT_TRUE(g.h_chords.empty());
  EXPECT_EQ(g.v_chords, (std::vector<Chord>{{{2, 2}, {3, 2}}, {{2, 3}, {3, 3}}}));
  EXPECT_TRUE(g.crossings.empty());
  EXPECT_EQ(min_partition(holes).size(), min_partition_oracle(holes));
}

TEST(MinPartition, Examples) {
  EXPECT_EQ(min_partition(CellRegion(4, 4)).size(), 0u);
  EXPECT_EQ(min_partition(CellRegion::from_rows({"####", "####", "####"})).size(), 1u);
  EXPECT_EQ(min_partition(kL).size(), 2u);
  EXPECT_EQ(min_partition(kPlus).size(), 3u);
  EXPECT_EQ(min_partition_oracle(kPlus), 3u);
}

TEST(MinPartition, HoleRegion) {
  // 3x3 ring: 4 rectangles.
  const CellRegion ring = CellRegion::from_rows({"###", "#.#", "###"});
  EXPECT_EQ(min_partition_oracle(ring), 4u);
  EXPECT_EQ(min_partition(ring).size(), 4u);
}

TEST(MinPartition, MatchesOracleOnRandom6x6) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 250) {
    const CellRegion region = testing::random_region(6, 6, rng, 0.55);
    if (region.cell_count() > kPartitionOracleCap) continue;
    const RectPartition p = min_partition(region);
    expect_valid_partition(region, p);
    ASSERT_EQ(p.size(), min_partition_oracle(region));
    ++checked;
  }
}

TEST(MinPartition, ValidOnLargeRandomRegions) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const CellRegion region = testing::random_region(40, 40, rng, 0.3 + 0.05 * trial);
    expect_valid_partition(region, min_partition(region));
  }
}

TEST(MinPartitionOracle, CapAndEmpty) {
  EXPECT_EQ(min_partition_oracle(CellRegion(3, 3)), 0u);
  EXPECT_EQ(min_partition_oracle(kL), 2u);
  const CellRegion big = CellRegion::from_rows({"#####", "#####", "#####", "#####", "#####"});
  EXPECT_THROW(min_partition_oracle(big), Error);
  EXPECT_EQ(min_partition_oracle(big, 25), 1u);
}

TEST(ChiGeom, Examples) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(chi_geom(generators::constant(n, 0)), 1u);
  EXPECT_EQ(chi_geom(generators::parity(1)), 4u);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(chi_geom(generators::checkerboard(n)), std::size_t{1} << (2 * n));
  }
}

TEST(ChiGeom, ParityN2IsNine) {
  // Frozen from the branch-and-bound oracle on both 8-cell color classes.
  const FunctionMatrix p = generators::parity(2);
  EXPECT_EQ(chi_geom_oracle(p), 9u);
  EXPECT_EQ(chi_geom(p), 9u);
}

TEST(ChiGeomTiling, Witnesses) {
  const Tiling one = chi_geom_tiling(generators::constant(2, 1));
  ASSERT_EQ(one.tiles.size(), 1u);
  EXPECT_EQ(one.tiles[0].rect, (GeoRect{0, 3, 0, 3}));
  EXPECT_EQ(one.tiles[0].color, 1);

  const Tiling p = chi_geom_tiling(generators::parity(1));
  ASSERT_EQ(p.tiles.size(), 4u);
  for (const Tile& t : p.tiles) EXPECT_EQ(t.rect.area(), 1u);

  const FunctionMatrix eq = generators::equality(1);
  EXPECT_EQ(chi_geom_oracle(eq), 4u);
  const Tiling e = chi_geom_tiling(eq);
  EXPECT_EQ(e.tiles.size(), 4u);
  EXPECT_TRUE(verify_tiling(eq, e).valid);
}

TEST(ChiGeom, SymmetriesAndBounds) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const FunctionMatrix m = testing::random_matrix(n, rng, 0.2 + 0.15 * (trial % 5));
    const std::size_t chi = chi_geom(m);
    EXPECT_EQ(chi, chi_geom(m.transpose()));
    EXPECT_EQ(chi, chi_geom(m.complement()));
    EXPECT_GE(chi, 1u);
    EXPECT_LE(chi, m.rows() * m.cols());
    const Tiling t = chi_geom_tiling(m);
    EXPECT_EQ(t.tiles.size(), chi);
    EXPECT_TRUE(verify_tiling(m, t).valid);
    EXPECT_TRUE(std::is_sorted(t.tiles.begin(), t.tiles.end()));
  }
}

}  // namespace
}  // namespace compcc
