#pragma once

// Comparison communication protocols. Alice holds the row input x, Bob the
// column input y; each internal node is owned by one of them and asks
// theta_t of the owner's input (or the constant-zero query).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compcc/boolfn.hpp"
#include "compcc/cdt.hpp"
#include "compcc/error.hpp"
#include "compcc/fmatrix.hpp"

namespace compcc {

enum class Owner : std::uint8_t { alice, bob };

inline const char* to_string(Owner o) { return o == Owner::alice ? "alice" : "bob"; }

struct ProtocolNode {
  QueryKind kind = QueryKind::leaf;
  Owner owner = Owner::alice;
  Input threshold = 0;
  Bit output = 0;
  NodeId child0 = 0;
  NodeId child1 = 0;

  bool is_leaf() const noexcept { return kind == QueryKind::leaf; }

  Bit route(Input x, Input y) const noexcept {
    if (kind != QueryKind::threshold) return 0;
    const Input v = owner == Owner::alice ? x : y;
    return v >= threshold ? Bit{1} : Bit{0};
  }

  friend bool operator==(const ProtocolNode&, const ProtocolNode&) = default;
};

// Preorder node storage, root = node 0. Cost is the tree depth.
class Protocol {
 public:
  Protocol(int n, std::vector<ProtocolNode> nodes) : n_(n), nodes_(std::move(nodes)) {
    FunctionMatrix::check_arity(n_);
    if (nodes_.empty()) fail(ErrorKind::invalid_argument, "protocol has no nodes");
    const Input limit = static_cast<Input>((Input{1} << n_) - 1);
    std::vector<std::uint8_t> parents(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const ProtocolNode& v = nodes_[i];
      if (v.is_leaf()) {
        if (v.output > 1) fail(ErrorKind::invalid_argument, "leaf output must be a bit");
        continue;
      }
      if (v.child0 <= i || v.child1 <= i || v.child0 >= nodes_.size() ||
          v.child1 >= nodes_.size() || v.child0 == v.child1) {
        fail(ErrorKind::invalid_argument, "malformed child links at node " + std::to_string(i));
      }
      if (v.kind == QueryKind::threshold && v.threshold > limit) {
        fail(ErrorKind::invalid_argument, "threshold exceeds input range at node " + std::to_string(i));
      }
      ++parents[v.child0];
      ++parents[v.child1];
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (parents[i] != 1) {
        fail(ErrorKind::invalid_argument, "node " + std::to_string(i) + " is not reachable exactly once");
      }
    }
  }

  static Protocol leaf(int n, Bit output) {
    return Protocol(n, {ProtocolNode{QueryKind::leaf, Owner::alice, 0, output, 0, 0}});
  }

  int arity() const noexcept { return n_; }
  const std::vector<ProtocolNode>& nodes() const noexcept { return nodes_; }
  const ProtocolNode& node(NodeId id) const { return nodes_.at(id); }

  int cost() const {
    std::vector<int> d(nodes_.size(), 0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      const ProtocolNode& v = nodes_[i];
      if (!v.is_leaf()) d[i] = 1 + std::max(d[v.child0], d[v.child1]);
    }
    return d[0];
  }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const ProtocolNode& v) { return v.is_leaf(); }));
  }

  friend bool operator==(const Protocol&, const Protocol&) = default;

 private:
  int n_;
  std::vector<ProtocolNode> nodes_;
};

struct Transcript {
  std::vector<Bit> bits;
  Bit output = 0;
  NodeId leaf = 0;
};

inline Transcript simulate(const Protocol& p, Input x, Input y) {
  const Input side = Input{1} << p.arity();
  if (x >= side || y >= side) fail(ErrorKind::invalid_argument, "input outside protocol arity");
  Transcript t;
  NodeId id = 0;
  while (!p.node(id).is_leaf()) {
    const ProtocolNode& v = p.node(id);
    const Bit b = v.route(x, y);
    t.bits.push_back(b);
    id = b ? v.child1 : v.child0;
  }
  t.output = p.node(id).output;
  t.leaf = id;
  return t;
}

inline constexpr int kProtocolVerifyCap = 6;

struct ProtocolVerdict {
  bool correct = false;
  int cost = 0;
  std::optional<std::pair<Input, Input>> witness;
};

inline ProtocolVerdict verify_protocol(const Protocol& p, const FunctionMatrix& m,
                                       int cap = kProtocolVerifyCap) {
  const int n = m.require_arity();
  if (n != p.arity()) {
    fail(ErrorKind::invalid_argument, "protocol arity " + std::to_string(p.arity()) +
                                          " does not match matrix arity " + std::to_string(n));
  }
  if (n > cap) {
    fail(ErrorKind::cap_exceeded,
         "protocol verification arity " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  ProtocolVerdict verdict{true, p.cost(), std::nullopt};
  const Input side = Input{1} << n;
  for (Input x = 0; x < side; ++x) {
    for (Input y = 0; y < side; ++y) {
      if (simulate(p, x, y).output != m(x, y)) {
        verdict.correct = false;
        verdict.witness = std::make_pair(x, y);
        return verdict;
      }
    }
  }
  return verdict;
}

namespace detail {

class ProtocolBuilder {
 public:
  NodeId add_leaf(Bit output) {
    nodes_.push_back(ProtocolNode{QueryKind::leaf, Owner::alice, 0, output, 0, 0});
    return last();
  }

  NodeId add_query(Owner owner, Input threshold) {
    nodes_.push_back(ProtocolNode{QueryKind::threshold, owner, threshold, 0, 0, 0});
    return last();
  }

  void link(NodeId parent, NodeId child0, NodeId child1) {
    nodes_[parent].child0 = child0;
    nodes_[parent].child1 = child1;
  }

  std::vector<ProtocolNode> release() && { return std::move(nodes_); }

 private:
  NodeId last() const { return static_cast<NodeId>(nodes_.size() - 1); }

  std::vector<ProtocolNode> nodes_;
};

// Binary search over strips [lo, hi] given by their first indices, with the
// decision tree split rule. `at_strip` builds the subtree for one strip.
template <typename AtStrip>
NodeId search_strips(ProtocolBuilder& b, Owner owner, const std::vector<std::size_t>& starts,
                     std::size_t lo, std::size_t hi, AtStrip&& at_strip) {
  if (lo == hi) return at_strip(lo);
  const std::size_t split = lo + (hi - lo - 1) / 2;
  const NodeId self = b.add_query(owner, static_cast<Input>(starts[split + 1]));
  const NodeId left = search_strips(b, owner, starts, lo, split, at_strip);
  const NodeId right = search_strips(b, owner, starts, split + 1, hi, at_strip);
  b.link(self, left, right);
  return self;
}

inline std::vector<std::size_t> identity_strips(std::size_t side) {
  std::vector<std::size_t> s(side);
  for (std::size_t i = 0; i < side; ++i) s[i] = i;
  return s;
}

}  // namespace detail

// Alice announces x with n halving queries, then Bob announces y; depth 2n.
inline Protocol trivial_protocol(const FunctionMatrix& m) {
  const int n = m.require_arity();
  const std::vector<std::size_t> all = detail::identity_strips(m.rows());
  detail::ProtocolBuilder b;
  detail::search_strips(b, Owner::alice, all, 0, all.size() - 1, [&](std::size_t x) {
    return detail::search_strips(b, Owner::bob, all, 0, all.size() - 1, [&](std::size_t y) {
      return b.add_leaf(m(x, y));
    });
  });
  return Protocol(n, std::move(b).release());
}

// First indices of the strips cut out by extending every tile edge across
// the matrix.
struct StripLayout {
  std::vector<std::size_t> row_starts;
  std::vector<std::size_t> col_starts;
};

inline StripLayout strip_layout(const FunctionMatrix& m, const Tiling& t) {
  StripLayout s;
  s.row_starts.push_back(0);
  s.col_starts.push_back(0);
  for (const Tile& tile : t.tiles) {
    s.row_starts.push_back(tile.rect.x_lo);
    if (tile.rect.x_hi + 1 < m.rows()) s.row_starts.push_back(tile.rect.x_hi + 1);
    s.col_starts.push_back(tile.rect.y_lo);
    if (tile.rect.y_hi + 1 < m.cols()) s.col_starts.push_back(tile.rect.y_hi + 1);
  }
  for (auto* v : {&s.row_starts, &s.col_starts}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return s;
}

// Compiles a monochromatic tiling into a protocol: Alice binary-searches her
// row strip, Bob his column strip, and the leaf carries the color of the tile
// containing that strip cell. Cost is ceil(log2 R) + ceil(log2 C).
inline Protocol protocol_from_tiling(const FunctionMatrix& m, const Tiling& t) {
  const int n = m.require_arity();
  const TilingVerdict verdict = verify_tiling(m, t);
  if (!verdict.valid) fail(ErrorKind::invalid_argument, "invalid tiling: " + verdict.describe());

  std::vector<Bit> color(m.rows() * m.cols(), 0);
  for (const Tile& tile : t.tiles) {
    for (std::size_t x = tile.rect.x_lo; x <= tile.rect.x_hi; ++x) {
      for (std::size_t y = tile.rect.y_lo; y <= tile.rect.y_hi; ++y) color[x * m.cols() + y] = tile.color;
    }
  }

  const StripLayout s = strip_layout(m, t);
  detail::ProtocolBuilder b;
  detail::search_strips(b, Owner::alice, s.row_starts, 0, s.row_starts.size() - 1, [&](std::size_t rs) {
    return detail::search_strips(
        b, Owner::bob, s.col_starts, 0, s.col_starts.size() - 1, [&](std::size_t cs) {
          return b.add_leaf(color[s.row_starts[rs] * m.cols() + s.col_starts[cs]]);
        });
  });
  return Protocol(n, std::move(b).release());
}

// Per-vertex input sets as rectangles; empty when no input reaches the vertex.
struct VertexRectangles {
  std::vector<std::optional<GeoRect>> rects;
};

// Top-down interval propagation. A threshold t on the owner's interval
// [lo, hi] sends [lo, min(hi, t-1)] to child0 and [max(lo, t), hi] to child1;
// an inverted interval is empty. Constant-zero sends everything to child0.
inline VertexRectangles vertex_rectangles(const Protocol& p) {
  const std::size_t side = std::size_t{1} << p.arity();
  VertexRectangles out;
  out.rects.assign(p.nodes().size(), std::nullopt);
  out.rects[0] = GeoRect{0, side - 1, 0, side - 1};
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    const ProtocolNode& v = p.nodes()[i];
    if (v.is_leaf() || !out.rects[i]) continue;
    const GeoRect r = *out.rects[i];
    if (v.kind == QueryKind::const_zero) {
      out.rects[v.child0] = r;
      continue;
    }
    const bool alice = v.owner == Owner::alice;
    const std::size_t lo = alice ? r.x_lo : r.y_lo;
    const std::size_t hi = alice ? r.x_hi : r.y_hi;
    const std::size_t t = v.threshold;
    auto with = [&](std::size_t a, std::size_t b) {
      GeoRect c = r;
      (alice ? c.x_lo : c.y_lo) = a;
      (alice ? c.x_hi : c.y_hi) = b;
      return c;
    };
    if (t > lo) out.rects[v.child0] = with(lo, std::min(hi, t - 1));
    if (t <= hi) out.rects[v.child1] = with(std::max(lo, t), hi);
  }
  return out;
}

// The leaf rectangles of a correct protocol form a monochromatic tiling with
// at most 2^cost tiles.
inline Tiling leaf_tiling(const Protocol& p, const FunctionMatrix& m) {
  const ProtocolVerdict verdict = verify_protocol(p, m, kMaxMatrixArity);
  if (!verdict.correct) fail(ErrorKind::invalid_argument, "protocol does not compute the matrix");
  const VertexRectangles vr = vertex_rectangles(p);
  Tiling t;
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    if (p.nodes()[i].is_leaf() && vr.rects[i]) t.tiles.push_back({*vr.rects[i], p.nodes()[i].output});
  }
  t.canonicalize();
  return t;
}

}  // namespace compcc
