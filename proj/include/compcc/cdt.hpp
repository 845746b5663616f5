#pragma once

// Comparison decision trees: every internal node asks theta_x(y) = [y >= x]
// (or the constant-zero query) and routes to child1 on a 1 answer.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compcc/boolfn.hpp"
#include "compcc/error.hpp"

namespace compcc {

using NodeId = std::uint32_t;

enum class QueryKind : std::uint8_t { leaf, threshold, const_zero };

struct TreeNode {
  QueryKind kind = QueryKind::leaf;
  Input threshold = 0;  // used when kind == threshold
  Bit output = 0;       // used when kind == leaf
  NodeId child0 = 0;
  NodeId child1 = 0;

  bool is_leaf() const noexcept { return kind == QueryKind::leaf; }

  // Branch taken on input y at an internal node.
  Bit route(Input y) const noexcept {
    return kind == QueryKind::threshold && y >= threshold ? Bit{1} : Bit{0};
  }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Nodes are stored in preorder; the root is node 0.
class ComparisonTree {
 public:
  ComparisonTree(int n, std::vector<TreeNode> nodes) : n_(n), nodes_(std::move(nodes)) {
    if (n_ < 1 || n_ > kMaxArity) fail(ErrorKind::invalid_argument, "tree arity out of range");
    if (nodes_.empty()) fail(ErrorKind::invalid_argument, "tree has no nodes");
    const Input limit = static_cast<Input>((std::uint64_t{1} << n_) - 1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const TreeNode& node = nodes_[i];
      if (node.is_leaf()) {
        if (node.output > 1) fail(ErrorKind::invalid_argument, "leaf output must be a bit");
        continue;
      }
      if (node.child0 <= i || node.child1 <= i || node.child0 >= nodes_.size() ||
          node.child1 >= nodes_.size() || node.child0 == node.child1) {
        fail(ErrorKind::invalid_argument, "malformed child links at node " + std::to_string(i));
      }
      if (node.kind == QueryKind::threshold && node.threshold > limit) {
        fail(ErrorKind::invalid_argument, "threshold exceeds input range at node " + std::to_string(i));
      }
    }
    check_tree_shape();
  }

  static ComparisonTree leaf(int n, Bit output) {
    return ComparisonTree(n, {TreeNode{QueryKind::leaf, 0, output, 0, 0}});
  }

  int arity() const noexcept { return n_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& v) { return v.is_leaf(); }));
  }

  int depth() const {
    std::vector<int> d(nodes_.size(), 0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      const TreeNode& v = nodes_[i];
      if (!v.is_leaf()) d[i] = 1 + std::max(d[v.child0], d[v.child1]);
    }
    return d[0];
  }

  Bit eval(Input y) const {
    const TreeNode* v = &nodes_[0];
    while (!v->is_leaf()) v = &nodes_[v->route(y) ? v->child1 : v->child0];
    return v->output;
  }

  friend bool operator==(const ComparisonTree&, const ComparisonTree&) = default;

 private:
  // Each non-root node must have exactly one parent.
  void check_tree_shape() const {
    std::vector<std::uint8_t> parents(nodes_.size(), 0);
    for (const TreeNode& v : nodes_) {
      if (v.is_leaf()) continue;
      ++parents[v.child0];
      ++parents[v.child1];
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (parents[i] != 1) {
        fail(ErrorKind::invalid_argument, "node " + std::to_string(i) + " is not reachable exactly once");
      }
    }
  }

  int n_;
  std::vector<TreeNode> nodes_;
};

namespace detail {

// Appends nodes in preorder and patches child links once subtrees exist.
class TreeBuilder {
 public:
  NodeId add_leaf(Bit output) {
    nodes_.push_back(TreeNode{QueryKind::leaf, 0, output, 0, 0});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  NodeId add_query(QueryKind kind, Input threshold) {
    nodes_.push_back(TreeNode{kind, threshold, 0, 0, 0});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void link(NodeId parent, NodeId child0, NodeId child1) {
    nodes_[parent].child0 = child0;
    nodes_[parent].child1 = child1;
  }

  std::vector<TreeNode> release() && { return std::move(nodes_); }

 private:
  std::vector<TreeNode> nodes_;
};

inline NodeId build_block_search(TreeBuilder& b, const BlockDecomposition& d, std::size_t lo,
                                 std::size_t hi) {
  if (lo == hi) return b.add_leaf(d.block_value(lo));
  // Boundaries lo..hi-1 separate blocks lo..hi; split the list at (len-1)/2.
  const std::size_t split = lo + (hi - lo - 1) / 2;
  const NodeId self = b.add_query(QueryKind::threshold, d.boundaries[split] + 1);
  const NodeId left = build_block_search(b, d, lo, split);
  const NodeId right = build_block_search(b, d, split + 1, hi);
  b.link(self, left, right);
  return self;
}

inline NodeId build_halving(TreeBuilder& b, const TruthTable& tt, Input lo, std::uint64_t size) {
  if (size == 1) return b.add_leaf(tt(lo));
  const std::uint64_t half = size / 2;
  const NodeId self = b.add_query(QueryKind::threshold, static_cast<Input>(lo + half));
  const NodeId left = build_halving(b, tt, lo, half);
  const NodeId right = build_halving(b, tt, static_cast<Input>(lo + half), half);
  b.link(self, left, right);
  return self;
}

}  // namespace detail

// Depth-optimal tree: binary search over the block boundaries. A boundary b
// is asked as theta_{b+1}, which separates y <= b from y >= b + 1.
inline ComparisonTree build_tree(const TruthTable& tt) {
  const BlockDecomposition d = blocks(tt);
  detail::TreeBuilder b;
  detail::build_block_search(b, d, 0, d.block_count() - 1);
  return ComparisonTree(tt.arity(), std::move(b).release());
}

// Complete depth-n tree that halves the current input interval at every level.
inline ComparisonTree trivial_tree(const TruthTable& tt) {
  detail::TreeBuilder b;
  detail::build_halving(b, tt, 0, std::uint64_t{1} << tt.arity());
  return ComparisonTree(tt.arity(), std::move(b).release());
}

struct TreeVerdict {
  bool correct = false;
  int depth = 0;
  std::optional<Input> witness;  // first input where the tree disagrees
};

inline TreeVerdict verify_tree(const ComparisonTree& tree, const TruthTable& tt) {
  if (tree.arity() != tt.arity()) {
    fail(ErrorKind::invalid_argument, "tree arity " + std::to_string(tree.arity()) +
                                          " does not match table arity " +
                                          std::to_string(tt.arity()));
  }
  TreeVerdict verdict{true, tree.depth(), std::nullopt};
  for (std::size_t y = 0; y < tt.size(); ++y) {
    if (tree.eval(static_cast<Input>(y)) != tt(static_cast<Input>(y))) {
      verdict.correct = false;
      verdict.witness = static_cast<Input>(y);
      break;
    }
  }
  return verdict;
}

inline constexpr int kTreeOracleCap = 6;

// Exact minimum depth by interval dynamic programming, independent of the
// block formula: depth[a,b] = 0 when constant on [a,b], otherwise
// 1 + min over x in (a,b] of max(depth[a,x-1], depth[x,b]).
inline int min_depth_oracle(const TruthTable& tt, int cap = kTreeOracleCap) {
  if (tt.arity() > cap) {
    fail(ErrorKind::cap_exceeded, "decision tree oracle arity " + std::to_string(tt.arity()) +
                                      " exceeds cap " + std::to_string(cap));
  }
  const std::size_t size = tt.size();
  std::vector<int> depth(size * size, 0);
  auto at = [&](std::size_t a, std::size_t b) -> int& { return depth[a * size + b]; };
  for (std::size_t len = 2; len <= size; ++len) {
    for (std::size_t a = 0; a + len <= size; ++a) {
      const std::size_t b = a + len - 1;
      bool constant = true;
      for (std::size_t i = a + 1; i <= b && constant; ++i) constant = tt(static_cast<Input>(i)) == tt(static_cast<Input>(a));
      if (constant) continue;
      int best = static_cast<int>(size);
      for (std::size_t x = a + 1; x <= b; ++x) best = std::min(best, std::max(at(a, x - 1), at(x, b)));
      at(a, b) = best + 1;
    }
  }
  return at(0, size - 1);
}

}  // namespace compcc
