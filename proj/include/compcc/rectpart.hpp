#pragma once

// Minimum partition of rectilinear grid regions into rectangles.
//
// The exact algorithm is the classical chord construction: cut along a
// maximum set of pairwise non-crossing chords (segments joining two reflex
// vertices through the interior), then resolve every reflex vertex that is
// still concave with one ray to the nearest wall. For a region with N reflex
// vertices, L independent chords and H holes this yields N - L - H + 1 faces,
// which is optimal. min_partition_oracle is an independent branch-and-bound.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compcc/error.hpp"
#include "compcc/fmatrix.hpp"

namespace compcc {

// Cells are (row, col); row-major membership bitmap.
class CellRegion {
 public:
  CellRegion(std::size_t height, std::size_t width)
      : height_(height), width_(width), cells_(height * width, 0) {}

  CellRegion(std::size_t height, std::size_t width, std::vector<Bit> cells)
      : height_(height), width_(width), cells_(std::move(cells)) {
    if (cells_.size() != height_ * width_) {
      fail(ErrorKind::invalid_argument, "region membership size does not match its shape");
    }
    for (const Bit b : cells_) {
      if (b > 1) fail(ErrorKind::invalid_argument, "region membership must be 0 or 1");
    }
  }

  // Rows of '#'/'1' (inside) and '.'/'0' (outside).
  static CellRegion from_rows(const std::vector<std::string>& rows) {
    const std::size_t h = rows.size();
    const std::size_t w = h ? rows.front().size() : 0;
    CellRegion region(h, w);
    for (std::size_t r = 0; r < h; ++r) {
      if (rows[r].size() != w) fail(ErrorKind::invalid_argument, "ragged region rows");
      for (std::size_t c = 0; c < w; ++c) {
        const char ch = rows[r][c];
        if (ch == '#' || ch == '1') {
          region.set(r, c, 1);
        } else if (ch != '.' && ch != '0') {
          fail(ErrorKind::invalid_argument, "region rows use '#'/'1' and '.'/'0'");
        }
      }
    }
    return region;
  }

  // Cells of `m` equal to `color`.
  static CellRegion of_color(const FunctionMatrix& m, Bit color) {
    std::vector<Bit> cells(m.bits().size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = m.bits()[i] == color;
    return CellRegion(m.rows(), m.cols(), std::move(cells));
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  const std::vector<Bit>& cells() const noexcept { return cells_; }

  // Signed access; anything outside the grid is outside the region.
  bool contains(std::ptrdiff_t r, std::ptrdiff_t c) const noexcept {
    if (r < 0 || c < 0 || r >= static_cast<std::ptrdiff_t>(height_) ||
        c >= static_cast<std::ptrdiff_t>(width_)) {
      return false;
    }
    return cells_[static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(c)] != 0;
  }

  void set(std::size_t r, std::size_t c, Bit inside) { cells_[r * width_ + c] = inside; }

  std::size_t cell_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Bit{1}));
  }

  bool empty() const { return cell_count() == 0; }

  friend bool operator==(const CellRegion&, const CellRegion&) = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<Bit> cells_;
};

// 4-connected components, each as a region on the same grid, ordered by
// their first cell in row-major order.
inline std::vector<CellRegion> components(const CellRegion& region) {
  const std::size_t h = region.height();
  const std::size_t w = region.width();
  std::vector<std::uint8_t> seen(h * w, 0);
  std::vector<CellRegion> out;
  for (std::size_t start = 0; start < h * w; ++start) {
    if (!region.cells()[start] || seen[start]) continue;
    CellRegion comp(h, w);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t cell = queue.front();
      queue.pop_front();
      const std::size_t r = cell / w;
      const std::size_t c = cell % w;
      comp.set(r, c, 1);
      const std::array<std::pair<std::ptrdiff_t, std::ptrdiff_t>, 4> steps{
          {{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
      for (const auto& [dr, dc] : steps) {
        const auto nr = static_cast<std::ptrdiff_t>(r) + dr;
        const auto nc = static_cast<std::ptrdiff_t>(c) + dc;
        if (!region.contains(nr, nc)) continue;
        const std::size_t next = static_cast<std::size_t>(nr) * w + static_cast<std::size_t>(nc);
        if (!seen[next]) {
          seen[next] = 1;
          queue.push_back(next);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// Grid corner: row in [0, height], col in [0, width]. Its incident cells are
// (row-1, col-1), (row-1, col), (row, col-1), (row, col).
struct LatticePoint {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

struct ReflexVertex {
  LatticePoint at;
  int multiplicity = 1;  // 2 for a pinch point

  friend bool operator==(const ReflexVertex&, const ReflexVertex&) = default;
};

// Axis-parallel chord between two reflex vertices, with a < b.
struct Chord {
  LatticePoint a;
  LatticePoint b;

  bool horizontal() const noexcept { return a.row == b.row; }

  friend auto operator<=>(const Chord&, const Chord&) = default;
};

// Horizontal and vertical chords intersect iff they share any lattice point,
// endpoints included.
inline bool chords_cross(const Chord& h, const Chord& v) noexcept {
  return h.a.col <= v.a.col && v.a.col <= h.b.col && v.a.row <= h.a.row && h.a.row <= v.b.row;
}

struct ChordGraph {
  std::vector<Chord> h_chords;
  std::vector<Chord> v_chords;
  std::vector<std::pair<std::size_t, std::size_t>> crossings;  // (h index, v index)
};

struct ChordSelection {
  std::vector<std::size_t> h;
  std::vector<std::size_t> v;

  std::size_t size() const noexcept { return h.size() + v.size(); }
};

struct RectPartition {
  std::vector<GeoRect> rects;

  std::size_t size() const noexcept { return rects.size(); }
};

namespace detail {

enum class Dir : std::uint8_t { up, down, left, right };

inline constexpr std::array<Dir, 4> kDirs{Dir::up, Dir::down, Dir::left, Dir::right};

// Walls live on unit segments of the lattice. A horizontal segment (i, j)
// joins (i, j)-(i, j+1) and separates cells (i-1, j) and (i, j); a vertical
// segment (i, j) joins (i, j)-(i+1, j) and separates (i, j-1) and (i, j).
class SegmentGrid {
 public:
  explicit SegmentGrid(const CellRegion& region)
      : region_(region),
        h_(region.height()),
        w_(region.width()),
        hcut_((h_ + 1) * w_, 0),
        vcut_(h_ * (w_ + 1), 0) {}

  const CellRegion& region() const noexcept { return region_; }

  int inside_count(LatticePoint p) const noexcept {
    const auto r = static_cast<std::ptrdiff_t>(p.row);
    const auto c = static_cast<std::ptrdiff_t>(p.col);
    return region_.contains(r - 1, c - 1) + region_.contains(r - 1, c) +
           region_.contains(r, c - 1) + region_.contains(r, c);
  }

  bool is_reflex(LatticePoint p) const noexcept { return inside_count(p) == 3; }

  bool is_pinch(LatticePoint p) const noexcept {
    const auto r = static_cast<std::ptrdiff_t>(p.row);
    const auto c = static_cast<std::ptrdiff_t>(p.col);
    const bool nw = region_.contains(r - 1, c - 1);
    const bool ne = region_.contains(r - 1, c);
    const bool sw = region_.contains(r, c - 1);
    const bool se = region_.contains(r, c);
    return (nw && se && !ne && !sw) || (ne && sw && !nw && !se);
  }

  // Does the segment leaving p in direction d exist on the grid?
  bool has_segment(LatticePoint p, Dir d) const noexcept {
    switch (d) {
      case Dir::up: return p.row > 0;
      case Dir::down: return p.row < h_;
      case Dir::left: return p.col > 0;
      case Dir::right: return p.col < w_;
    }
    return false;
  }

  // Both flanking cells of the segment leaving p in direction d are inside.
  bool interior(LatticePoint p, Dir d) const noexcept {
    if (!has_segment(p, d)) return false;
    const auto r = static_cast<std::ptrdiff_t>(p.row);
    const auto c = static_cast<std::ptrdiff_t>(p.col);
    switch (d) {
      case Dir::up: return region_.contains(r - 1, c - 1) && region_.contains(r - 1, c);
      case Dir::down: return region_.contains(r, c - 1) && region_.contains(r, c);
      case Dir::left: return region_.contains(r - 1, c - 1) && region_.contains(r, c - 1);
      case Dir::right: return region_.contains(r - 1, c) && region_.contains(r, c);
    }
    return false;
  }

  bool cut(LatticePoint p, Dir d) const { return cut_flag(p, d); }

  void set_cut(LatticePoint p, Dir d) { cut_flag(p, d) = 1; }

  // Interior and not yet cut: a ray may travel along it.
  bool open(LatticePoint p, Dir d) const { return interior(p, d) && !cut(p, d); }

  static LatticePoint step(LatticePoint p, Dir d) noexcept {
    switch (d) {
      case Dir::up: return {p.row - 1, p.col};
      case Dir::down: return {p.row + 1, p.col};
      case Dir::left: return {p.row, p.col - 1};
      case Dir::right: return {p.row, p.col + 1};
    }
    return p;
  }

  static Dir opposite(Dir d) noexcept {
    switch (d) {
      case Dir::up: return Dir::down;
      case Dir::down: return Dir::up;
      case Dir::left: return Dir::right;
      case Dir::right: return Dir::left;
    }
    return d;
  }

  // Cells (r, c) and (r, c+1) share an uncut wall.
  bool joined_right(std::size_t r, std::size_t c) const {
    return !vcut_[r * (w_ + 1) + c + 1];
  }

  // Cells (r, c) and (r+1, c) share an uncut wall.
  bool joined_down(std::size_t r, std::size_t c) const { return !hcut_[(r + 1) * w_ + c]; }

 private:
  std::uint8_t& cut_flag(LatticePoint p, Dir d) {
    return const_cast<std::uint8_t&>(std::as_const(*this).cut_flag(p, d));
  }

  const std::uint8_t& cut_flag(LatticePoint p, Dir d) const {
    switch (d) {
      case Dir::up: return vcut_[(p.row - 1) * (w_ + 1) + p.col];
      case Dir::down: return vcut_[p.row * (w_ + 1) + p.col];
      case Dir::left: return hcut_[p.row * w_ + p.col - 1];
      case Dir::right: break;
    }
    return hcut_[p.row * w_ + p.col];
  }

  const CellRegion& region_;
  std::size_t h_;
  std::size_t w_;
  std::vector<std::uint8_t> hcut_;
  std::vector<std::uint8_t> vcut_;
};

// Follows interior segments from reflex vertex p; returns the reflex vertex
// reached if the path never touches the boundary first.
inline std::optional<LatticePoint> chord_end(const SegmentGrid& g, LatticePoint p, Dir d) {
  LatticePoint q = p;
  while (g.interior(q, d)) {
    q = SegmentGrid::step(q, d);
    if (g.is_reflex(q)) return q;
    if (g.inside_count(q) != 4) return std::nullopt;
  }
  return std::nullopt;
}

inline void cut_chord(SegmentGrid& g, const Chord& chord) {
  const Dir d = chord.horizontal() ? Dir::right : Dir::down;
  for (LatticePoint q = chord.a; q != chord.b; q = SegmentGrid::step(q, d)) g.set_cut(q, d);
}

// Extends a cut from p until it meets the boundary or an earlier cut.
inline void shoot_ray(SegmentGrid& g, LatticePoint p, Dir d) {
  LatticePoint q = p;
  for (;;) {
    if (!g.open(q, d)) fail(ErrorKind::internal, "ray started on a blocked segment");
    g.set_cut(q, d);
    q = SegmentGrid::step(q, d);
    const Dir back = SegmentGrid::opposite(d);
    bool blocked = false;
    for (const Dir e : kDirs) {
      if (e != back && !g.open(q, e)) blocked = true;
    }
    if (blocked) return;
  }
}

// Maximum bipartite matching by augmenting paths.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right,
                   const std::vector<std::pair<std::size_t, std::size_t>>& edges)
      : adj_(left), match_left_(left, kNone), match_right_(right, kNone) {
    for (const auto& [l, r] : edges) adj_[l].push_back(r);
    for (std::size_t l = 0; l < left; ++l) {
      std::vector<std::uint8_t> visited(right, 0);
      augment(l, visited);
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const std::vector<std::vector<std::size_t>>& adjacency() const noexcept { return adj_; }
  const std::vector<std::size_t>& match_left() const noexcept { return match_left_; }
  const std::vector<std::size_t>& match_right() const noexcept { return match_right_; }

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count_if(match_left_.begin(), match_left_.end(), [](std::size_t m) { return m != kNone; }));
  }

 private:
  bool augment(std::size_t l, std::vector<std::uint8_t>& visited) {
    for (const std::size_t r : adj_[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_right_[r] == kNone || augment(match_right_[r], visited)) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
};

}  // namespace detail

// Concave corners (three incident cells inside) with multiplicity 1 and pinch
// points (two diagonally opposite cells inside) with multiplicity 2, in
// row-major lattice order.
inline std::vector<ReflexVertex> reflex_vertices(const CellRegion& region) {
  const detail::SegmentGrid g(region);
  std::vector<ReflexVertex> out;
  for (std::size_t i = 0; i <= region.height(); ++i) {
    for (std::size_t j = 0; j <= region.width(); ++j) {
      const LatticePoint p{i, j};
      if (g.is_reflex(p)) {
        out.push_back({p, 1});
      } else if (g.is_pinch(p)) {
        out.push_back({p, 2});
      }
    }
  }
  return out;
}

inline ChordGraph chord_graph(const CellRegion& region) {
  const detail::SegmentGrid g(region);
  ChordGraph graph;
  for (const ReflexVertex& rv : reflex_vertices(region)) {
    if (rv.multiplicity != 1) continue;
    if (const auto end = detail::chord_end(g, rv.at, detail::Dir::right)) {
      graph.h_chords.push_back({rv.at, *end});
    }
    if (const auto end = detail::chord_end(g, rv.at, detail::Dir::down)) {
      graph.v_chords.push_back({rv.at, *end});
    }
  }
  for (std::size_t i = 0; i < graph.h_chords.size(); ++i) {
    for (std::size_t j = 0; j < graph.v_chords.size(); ++j) {
      if (chords_cross(graph.h_chords[i], graph.v_chords[j])) graph.crossings.emplace_back(i, j);
    }
  }
  return graph;
}

// Maximum independent set of the bipartite crossing graph via Konig's
// theorem: with Z the vertices reachable from unmatched horizontal chords by
// alternating paths, the set (H ∩ Z) ∪ (V \ Z) is independent and maximum.
inline ChordSelection max_independent_chords(const ChordGraph& g) {
  const detail::BipartiteMatcher matcher(g.h_chords.size(), g.v_chords.size(), g.crossings);
  const auto& adj = matcher.adjacency();
  std::vector<std::uint8_t> reach_h(g.h_chords.size(), 0);
  std::vector<std::uint8_t> reach_v(g.v_chords.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t l = 0; l < g.h_chords.size(); ++l) {
    if (matcher.match_left()[l] == detail::BipartiteMatcher::kNone) {
      reach_h[l] = 1;
      queue.push_back(l);
    }
  }
  while (!queue.empty()) {
    const std::size_t l = queue.front();
    queue.pop_front();
    for (const std::size_t r : adj[l]) {
      if (reach_v[r]) continue;
      reach_v[r] = 1;
      const std::size_t next = matcher.match_right()[r];
      if (next != detail::BipartiteMatcher::kNone && !reach_h[next]) {
        reach_h[next] = 1;
        queue.push_back(next);
      }
    }
  }
  ChordSelection sel;
  for (std::size_t l = 0; l < reach_h.size(); ++l) {
    if (reach_h[l]) sel.h.push_back(l);
  }
  for (std::size_t r = 0; r < reach_v.size(); ++r) {
    if (!reach_v[r]) sel.v.push_back(r);
  }
  return sel;
}

// Minimum-cardinality partition of the region into rectangles, sorted.
//
// Pinch points need no cut: every unit segment at a pinch lies on the
// boundary, so no ray can start there or pass through one.
inline RectPartition min_partition(const CellRegion& region) {
  RectPartition partition;
  if (region.empty()) return partition;

  detail::SegmentGrid g(region);
  const ChordGraph graph = chord_graph(region);
  const ChordSelection chosen = max_independent_chords(graph);
  for (const std::size_t i : chosen.h) detail::cut_chord(g, graph.h_chords[i]);
  for (const std::size_t i : chosen.v) detail::cut_chord(g, graph.v_chords[i]);

  for (const ReflexVertex& rv : reflex_vertices(region)) {
    if (rv.multiplicity != 1) continue;
    bool resolved = false;
    for (const detail::Dir d : detail::kDirs) {
      if (g.interior(rv.at, d) && g.cut(rv.at, d)) resolved = true;
    }
    if (resolved) continue;
    for (const detail::Dir d : detail::kDirs) {
      if (g.interior(rv.at, d)) {
        detail::shoot_ray(g, rv.at, d);
        break;
      }
    }
  }

  // Faces are the connected cell sets left between walls and cuts.
  const std::size_t h = region.height();
  const std::size_t w = region.width();
  std::vector<std::uint8_t> seen(h * w, 0);
  for (std::size_t start = 0; start < h * w; ++start) {
    if (!region.cells()[start] || seen[start]) continue;
    GeoRect box{start / w, start / w, start % w, start % w};
    std::size_t count = 0;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    auto visit = [&](std::size_t next) {
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    };
    while (!queue.empty()) {
      const std::size_t cell = queue.front();
      queue.pop_front();
      const std::size_t r = cell / w;
      const std::size_t c = cell % w;
      ++count;
      box.x_lo = std::min(box.x_lo, r);
      box.x_hi = std::max(box.x_hi, r);
      box.y_lo = std::min(box.y_lo, c);
      box.y_hi = std::max(box.y_hi, c);
      if (c + 1 < w && region.contains(r, c + 1) && g.joined_right(r, c)) visit(cell + 1);
      if (c > 0 && region.contains(r, c - 1) && g.joined_right(r, c - 1)) visit(cell - 1);
      if (r + 1 < h && region.contains(r + 1, c) && g.joined_down(r, c)) visit(cell + w);
      if (r > 0 && region.contains(r - 1, c) && g.joined_down(r - 1, c)) visit(cell - w);
    }
    if (count != box.area()) {
      fail(ErrorKind::internal, "rectangulation produced a non-rectangular face at cell (" +
                                    std::to_string(start / w) + "," + std::to_string(start % w) + ")");
    }
    partition.rects.push_back(box);
  }
  std::sort(partition.rects.begin(), partition.rects.end());
  return partition;
}

inline constexpr std::size_t kPartitionOracleCap = 24;

namespace detail {

class PartitionSearch {
 public:
  explicit PartitionSearch(const CellRegion& region)
      : h_(region.height()), w_(region.width()), free_(region.cells()), best_(region.cell_count()) {}

  std::size_t run() {
    search(0, 0);
    return best_;
  }

 private:
  bool is_free(std::size_t r, std::size_t c) const { return free_[r * w_ + c] != 0; }

  // Free cells with no free neighbour above or to the left must each start a
  // distinct rectangle.
  std::size_t lower_bound(std::size_t from) const {
    std::size_t forced = 0;
    for (std::size_t i = from; i < free_.size(); ++i) {
      if (!free_[i]) continue;
      const std::size_t r = i / w_;
      const std::size_t c = i % w_;
      if ((r == 0 || !is_free(r - 1, c)) && (c == 0 || !is_free(r, c - 1))) ++forced;
    }
    return forced;
  }

  void fill(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1, Bit value) {
    for (std::size_t r = r0; r <= r1; ++r) {
      for (std::size_t c = c0; c <= c1; ++c) free_[r * w_ + c] = value;
    }
  }

  void search(std::size_t from, std::size_t used) {
    while (from < free_.size() && !free_[from]) ++from;
    if (from == free_.size()) {
      best_ = std::min(best_, used);
      return;
    }
    if (used + lower_bound(from) >= best_) return;

    // The first free cell in row-major order is the top-left corner of
    // whichever rectangle covers it.
    const std::size_t r0 = from / w_;
    const std::size_t c0 = from % w_;
    std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (rows, cols)
    std::size_t max_cols = w_ - c0;
    for (std::size_t r = r0; r < h_; ++r) {
      std::size_t run = 0;
      while (run < max_cols && is_free(r, c0 + run)) ++run;
      max_cols = run;
      if (max_cols == 0) break;
      for (std::size_t cols = 1; cols <= max_cols; ++cols) shapes.emplace_back(r - r0 + 1, cols);
    }
    std::sort(shapes.begin(), shapes.end(), [](const auto& a, const auto& b) {
      return a.first * a.second > b.first * b.second;
    });
    for (const auto& [rows, cols] : shapes) {
      fill(r0, r0 + rows - 1, c0, c0 + cols - 1, 0);
      search(from + 1, used + 1);
      fill(r0, r0 + rows - 1, c0, c0 + cols - 1, 1);
      if (used + 1 >= best_) return;
    }
  }

  std::size_t h_;
  std::size_t w_;
  std::vector<Bit> free_;
  std::size_t best_;
};

}  // namespace detail

// Exact minimum by exhaustive branch-and-bound; independent of the chord
// construction.
inline std::size_t min_partition_oracle(const CellRegion& region,
                                        std::size_t cap = kPartitionOracleCap) {
  const std::size_t cells = region.cell_count();
  if (cells > cap) {
    fail(ErrorKind::cap_exceeded, "partition oracle region has " + std::to_string(cells) +
                                      " cells, cap is " + std::to_string(cap));
  }
  if (cells == 0) return 0;
  return detail::PartitionSearch(region).run();
}

inline Tiling chi_geom_tiling(const FunctionMatrix& m) {
  Tiling t;
  for (const Bit color : {Bit{0}, Bit{1}}) {
    for (const GeoRect& r : min_partition(CellRegion::of_color(m, color)).rects) {
      t.tiles.push_back({r, color});
    }
  }
  t.canonicalize();
  return t;
}

// Minimum number of monochromatic geometric rectangles tiling the matrix.
// Each tile lies inside one color class, so the classes partition
// independently.
inline std::size_t chi_geom(const FunctionMatrix& m) {
  return min_partition(CellRegion::of_color(m, 0)).size() +
         min_partition(CellRegion::of_color(m, 1)).size();
}

inline std::size_t chi_geom_oracle(const FunctionMatrix& m, std::size_t cap = kPartitionOracleCap) {
  return min_partition_oracle(CellRegion::of_color(m, 0), cap) +
         min_partition_oracle(CellRegion::of_color(m, 1), cap);
}

}  // namespace compcc
