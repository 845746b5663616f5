#pragma once

// Text documents for every serializable value.
//
//   truth table   n=<int>            then one line of 2^n '0'/'1' characters
//   matrix        n=<int>            then 2^n rows of 2^n characters (row = Alice)
//   grid          rows=<r> cols=<c>  then r rows of c characters (any shape)
//   tree          kind=tree, n=<int>, then preorder nodes
//   protocol      kind=protocol, n=<int>, then preorder nodes
//   tiling        kind=tiling, rows=<r>, cols=<c>, then one `tile` line each
//
// Tree and protocol nodes are one per line, indented two spaces per depth:
//   threshold <t> | const0 | leaf <bit>             (tree)
//   alice|bob threshold <t> | alice|bob const0 | leaf <bit>   (protocol)
// Tiles: `tile x=<lo>..<hi> y=<lo>..<hi> color=<bit>`.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "compcc/boolfn.hpp"
#include "compcc/ccp.hpp"
#include "compcc/cdt.hpp"
#include "compcc/error.hpp"
#include "compcc/fmatrix.hpp"
#include "compcc/rectpart.hpp"

namespace compcc::io {

namespace detail {

struct Line {
  std::size_t number = 0;  // 1-based
  std::size_t indent = 0;
  std::string_view text;   // without indentation or trailing whitespace
};

class LineReader {
 public:
  explicit LineReader(std::string_view doc) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= doc.size()) {
      const std::size_t end = std::min(doc.find('\n', pos), doc.size());
      std::string_view raw = doc.substr(pos, end - pos);
      ++number;
      pos = end + 1;
      while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) {
        raw.remove_suffix(1);
      }
      std::size_t indent = 0;
      while (indent < raw.size() && raw[indent] == ' ') ++indent;
      if (indent == raw.size()) continue;
      lines_.push_back({number, indent, raw.substr(indent)});
    }
    last_line_ = number;
  }

  bool done() const noexcept { return next_ >= lines_.size(); }
  std::size_t remaining() const noexcept { return lines_.size() - next_; }

  const Line& peek() const {
    if (done()) throw ParseError(last_line_, 1, "unexpected end of document");
    return lines_[next_];
  }

  const Line& take() {
    const Line& l = peek();
    ++next_;
    return l;
  }

  void expect_end() const {
    if (!done()) {
      const Line& l = lines_[next_];
      throw ParseError(l.number, l.indent + 1, "unexpected trailing content");
    }
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 1;
};

inline std::uint64_t parse_uint(const Line& line, std::string_view token, std::size_t column) {
  std::uint64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line.number, column, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

// Parses `key=<uint>` occupying the whole token.
inline std::uint64_t parse_field(const Line& line, std::string_view token, std::string_view key,
                                 std::size_t column) {
  if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=') {
    throw ParseError(line.number, column, "expected '" + std::string(key) + "=<int>'");
  }
  return parse_uint(line, token.substr(key.size() + 1), column + key.size() + 1);
}

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based, within the raw line
};

inline std::vector<Token> split(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::string_view s = line.text;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back({s.substr(start, i - start), line.indent + start + 1});
  }
  return out;
}

inline std::vector<Bit> parse_bits(const Line& line, std::size_t expected) {
  if (line.indent != 0) throw ParseError(line.number, 1, "data rows must not be indented");
  std::vector<Bit> bits;
  bits.reserve(line.text.size());
  for (std::size_t i = 0; i < line.text.size(); ++i) {
    const char c = line.text[i];
    if (c != '0' && c != '1') {
      throw ParseError(line.number, i + 1, std::string("expected '0' or '1', got '") + c + "'");
    }
    bits.push_back(static_cast<Bit>(c - '0'));
  }
  if (bits.size() != expected) {
    throw ParseError(line.number, std::min(bits.size(), expected) + 1,
                     "expected " + std::to_string(expected) + " cells, got " + std::to_string(bits.size()));
  }
  return bits;
}

inline int parse_arity(const Line& line, int cap) {
  const auto tokens = split(line);
  if (tokens.size() != 1) throw ParseError(line.number, 1, "expected 'n=<int>'");
  const std::uint64_t n = parse_field(line, tokens[0].text, "n", tokens[0].column);
  if (n < 1 || n > static_cast<std::uint64_t>(cap)) {
    throw ParseError(line.number, tokens[0].column + 2,
                     "arity " + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
  }
  return static_cast<int>(n);
}

inline std::string_view expect_kind(LineReader& in) {
  const Line& line = in.take();
  const auto tokens = split(line);
  if (tokens.size() != 1 || tokens[0].text.substr(0, 5) != "kind=") {
    throw ParseError(line.number, 1, "expected 'kind=<tree|protocol|tiling>'");
  }
  return tokens[0].text.substr(5);
}

inline std::string indent(std::size_t depth) { return std::string(2 * depth, ' '); }

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_argument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  out << content;
}

// ---- truth tables and matrices -------------------------------------------

inline std::string serialize(const TruthTable& tt) {
  return "n=" + std::to_string(tt.arity()) + "\n" + tt.to_string() + "\n";
}

inline std::string serialize(const FunctionMatrix& m) {
  std::string s = "n=" + std::to_string(m.require_arity()) + "\n";
  for (std::size_t x = 0; x < m.rows(); ++x) {
    for (std::size_t y = 0; y < m.cols(); ++y) s.push_back(static_cast<char>('0' + m(x, y)));
    s.push_back('\n');
  }
  return s;
}

inline std::string serialize_grid(const FunctionMatrix& m) {
  std::string s = "rows=" + std::to_string(m.rows()) + " cols=" + std::to_string(m.cols()) + "\n";
  for (std::size_t x = 0; x < m.rows(); ++x) {
    for (std::size_t y = 0; y < m.cols(); ++y) s.push_back(static_cast<char>('0' + m(x, y)));
    s.push_back('\n');
  }
  return s;
}

// Either a one-dimensional table or a two-party matrix, decided by the
// number of data rows after the header.
using FunctionDocument = std::variant<TruthTable, FunctionMatrix>;

inline FunctionDocument parse_function(std::string_view doc) {
  detail::LineReader in(doc);
  const detail::Line& header = in.take();
  if (header.text.substr(0, 5) == "rows=") {
    const auto tokens = detail::split(header);
    if (tokens.size() != 2) throw ParseError(header.number, 1, "expected 'rows=<int> cols=<int>'");
    const std::uint64_t rows = detail::parse_field(header, tokens[0].text, "rows", tokens[0].column);
    const std::uint64_t cols = detail::parse_field(header, tokens[1].text, "cols", tokens[1].column);
    if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
      throw ParseError(header.number, 1, "grid dimensions must lie in [1, 4096]");
    }
    std::vector<Bit> bits;
    for (std::uint64_t r = 0; r < rows; ++r) {
      const auto row = detail::parse_bits(in.take(), cols);
      bits.insert(bits.end(), row.begin(), row.end());
    }
    in.expect_end();
    return FunctionMatrix(rows, cols, std::move(bits));
  }
  const int n = detail::parse_arity(header, kMaxArity);
  const std::size_t side = std::size_t{1} << n;
  if (in.remaining() == 1) {
    auto bits = detail::parse_bits(in.take(), side);
    return TruthTable(n, std::move(bits));
  }
  if (n > kMaxMatrixArity) {
    throw ParseError(header.number, 3, "matrix arity " + std::to_string(n) + " exceeds " +
                                           std::to_string(kMaxMatrixArity));
  }
  std::vector<Bit> bits;
  for (std::size_t r = 0; r < side; ++r) {
    const auto row = detail::parse_bits(in.take(), side);
    bits.insert(bits.end(), row.begin(), row.end());
  }
  in.expect_end();
  return FunctionMatrix(side, side, std::move(bits));
}

inline TruthTable parse_truth_table(std::string_view doc) {
  auto f = parse_function(doc);
  if (auto* tt = std::get_if<TruthTable>(&f)) return std::move(*tt);
  throw ParseError(1, 1, "expected a truth table, got a matrix");
}

inline FunctionMatrix parse_matrix(std::string_view doc) {
  auto f = parse_function(doc);
  if (auto* m = std::get_if<FunctionMatrix>(&f)) return std::move(*m);
  throw ParseError(1, 1, "expected a matrix, got a truth table");
}

// ---- trees ----------------------------------------------------------------

inline std::string serialize(const ComparisonTree& tree) {
  std::string s = "kind=tree\nn=" + std::to_string(tree.arity()) + "\n";
  std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const TreeNode& v = tree.node(id);
    s += detail::indent(depth);
    switch (v.kind) {
      case QueryKind::leaf: s += "leaf " + std::to_string(v.output) + "\n"; continue;
      case QueryKind::threshold: s += "threshold " + std::to_string(v.threshold) + "\n"; break;
      case QueryKind::const_zero: s += "const0\n"; break;
    }
    stack.emplace_back(v.child1, depth + 1);
    stack.emplace_back(v.child0, depth + 1);
  }
  return s;
}

namespace detail {

template <typename Node, typename ParseQuery>
std::vector<Node> parse_preorder(LineReader& in, ParseQuery&& parse_query) {
  std::vector<Node> nodes;
  // Parents waiting for a child: (node index, children seen so far).
  std::vector<std::pair<NodeId, int>> open;
  do {
    const Line& line = in.take();
    const auto id = static_cast<NodeId>(nodes.size());
    if (!open.empty()) {
      auto& [parent, seen] = open.back();
      (seen == 0 ? nodes[parent].child0 : nodes[parent].child1) = id;
      if (++seen == 2) open.pop_back();
    }
    Node node = parse_query(line);
    nodes.push_back(node);
    if (!node.is_leaf()) open.emplace_back(id, 0);
  } while (!open.empty());
  in.expect_end();
  return nodes;
}

inline Bit parse_bit(const Line& line, const Token& t) {
  if (t.text != "0" && t.text != "1") throw ParseError(line.number, t.column, "expected a bit");
  return static_cast<Bit>(t.text[0] - '0');
}

}  // namespace detail

inline ComparisonTree parse_tree(std::string_view doc) {
  detail::LineReader in(doc);
  const detail::Line& kind_line = in.peek();
  if (detail::expect_kind(in) != "tree") throw ParseError(kind_line.number, 6, "expected kind=tree");
  const int n = detail::parse_arity(in.take(), kMaxArity);
  const Input limit = static_cast<Input>((std::uint64_t{1} << n) - 1);
  auto nodes = detail::parse_preorder<TreeNode>(in, [&](const detail::Line& line) {
    const auto tokens = detail::split(line);
    TreeNode node;
    const std::string_view head = tokens.front().text;
    if (head == "leaf" && tokens.size() == 2) {
      node.kind = QueryKind::leaf;
      node.output = detail::parse_bit(line, tokens[1]);
    } else if (head == "threshold" && tokens.size() == 2) {
      node.kind = QueryKind::threshold;
      const std::uint64_t t = detail::parse_uint(line, tokens[1].text, tokens[1].column);
      if (t > limit) throw ParseError(line.number, tokens[1].column, "threshold outside input range");
      node.threshold = static_cast<Input>(t);
    } else if (head == "const0" && tokens.size() == 1) {
      node.kind = QueryKind::const_zero;
    } else {
      throw ParseError(line.number, tokens.front().column,
                       "expected 'leaf <bit>', 'threshold <t>' or 'const0'");
    }
    return node;
  });
  return ComparisonTree(n, std::move(nodes));
}

// ---- protocols ------------------------------------------------------------

inline std::string serialize(const Protocol& p) {
  std::string s = "kind=protocol\nn=" + std::to_string(p.arity()) + "\n";
  std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const ProtocolNode& v = p.node(id);
    s += detail::indent(depth);
    if (v.is_leaf()) {
      s += "leaf " + std::to_string(v.output) + "\n";
      continue;
    }
    s += to_string(v.owner);
    s += v.kind == QueryKind::threshold ? " threshold " + std::to_string(v.threshold) + "\n" : " const0\n";
    stack.emplace_back(v.child1, depth + 1);
    stack.emplace_back(v.child0, depth + 1);
  }
  return s;
}

inline Protocol parse_protocol(std::string_view doc) {
  detail::LineReader in(doc);
  const detail::Line& kind_line = in.peek();
  if (detail::expect_kind(in) != "protocol") throw ParseError(kind_line.number, 6, "expected kind=protocol");
  const int n = detail::parse_arity(in.take(), kMaxMatrixArity);
  const Input limit = static_cast<Input>((Input{1} << n) - 1);
  auto nodes = detail::parse_preorder<ProtocolNode>(in, [&](const detail::Line& line) {
    const auto tokens = detail::split(line);
    ProtocolNode node;
    const std::string_view head = tokens.front().text;
    if (head == "leaf" && tokens.size() == 2) {
      node.output = detail::parse_bit(line, tokens[1]);
      return node;
    }
    if (head != "alice" && head != "bob") {
      throw ParseError(line.number, tokens.front().column, "expected 'leaf', 'alice' or 'bob'");
    }
    node.owner = head == "alice" ? Owner::alice : Owner::bob;
    if (tokens.size() == 3 && tokens[1].text == "threshold") {
      node.kind = QueryKind::threshold;
      const std::uint64_t t = detail::parse_uint(line, tokens[2].text, tokens[2].column);
      if (t > limit) throw ParseError(line.number, tokens[2].column, "threshold outside input range");
      node.threshold = static_cast<Input>(t);
    } else if (tokens.size() == 2 && tokens[1].text == "const0") {
      node.kind = QueryKind::const_zero;
    } else {
      const std::size_t column = tokens.size() > 1 ? tokens[1].column : line.indent + line.text.size() + 1;
      throw ParseError(line.number, column, "expected 'threshold <t>' or 'const0'");
    }
    return node;
  });
  return Protocol(n, std::move(nodes));
}

// ---- tilings --------------------------------------------------------------

inline std::string serialize(const Tiling& t, std::size_t rows, std::size_t cols) {
  std::ostringstream s;
  s << "kind=tiling\nrows=" << rows << "\ncols=" << cols << "\n";
  for (const Tile& tile : t.tiles) {
    s << "tile x=" << tile.rect.x_lo << ".." << tile.rect.x_hi << " y=" << tile.rect.y_lo << ".."
      << tile.rect.y_hi << " color=" << static_cast<int>(tile.color) << "\n";
  }
  return s.str();
}

struct TilingDocument {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Tiling tiling;

  friend bool operator==(const TilingDocument&, const TilingDocument&) = default;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> parse_range(const Line& line, const Token& t, char axis) {
  const std::string_view s = t.text;
  const std::size_t dots = s.find("..");
  if (s.size() < 3 || s[0] != axis || s[1] != '=' || dots == std::string_view::npos) {
    throw ParseError(line.number, t.column, std::string("expected '") + axis + "=<lo>..<hi>'");
  }
  const auto lo = parse_uint(line, s.substr(2, dots - 2), t.column + 2);
  const auto hi = parse_uint(line, s.substr(dots + 2), t.column + dots + 2);
  if (lo > hi) throw ParseError(line.number, t.column, "range lower bound exceeds upper bound");
  return {lo, hi};
}

inline std::uint64_t parse_header_field(LineReader& in, std::string_view key) {
  const Line& line = in.take();
  const auto tokens = split(line);
  if (tokens.size() != 1) throw ParseError(line.number, 1, "expected '" + std::string(key) + "=<int>'");
  return parse_field(line, tokens[0].text, key, tokens[0].column);
}

}  // namespace detail

inline TilingDocument parse_tiling(std::string_view doc) {
  detail::LineReader in(doc);
  const detail::Line& kind_line = in.peek();
  if (detail::expect_kind(in) != "tiling") throw ParseError(kind_line.number, 6, "expected kind=tiling");
  TilingDocument out;
  out.rows = detail::parse_header_field(in, "rows");
  out.cols = detail::parse_header_field(in, "cols");
  while (!in.done()) {
    const detail::Line& line = in.take();
    const auto tokens = detail::split(line);
    if (tokens.size() != 4 || tokens[0].text != "tile") {
      throw ParseError(line.number, 1, "expected 'tile x=<lo>..<hi> y=<lo>..<hi> color=<bit>'");
    }
    const auto [x_lo, x_hi] = detail::parse_range(line, tokens[1], 'x');
    const auto [y_lo, y_hi] = detail::parse_range(line, tokens[2], 'y');
    const std::uint64_t color = detail::parse_field(line, tokens[3].text, "color", tokens[3].column);
    if (color > 1) throw ParseError(line.number, tokens[3].column + 6, "color must be 0 or 1");
    const GeoRect r{x_lo, x_hi, y_lo, y_hi};
    if (!r.fits(out.rows, out.cols)) throw ParseError(line.number, tokens[1].column, "tile outside the grid");
    out.tiling.tiles.push_back({r, static_cast<Bit>(color)});
  }
  return out;
}

// ---- dispatch -------------------------------------------------------------

enum class DocumentKind { function, tree, protocol, tiling };

inline DocumentKind sniff(std::string_view doc) {
  detail::LineReader in(doc);
  const detail::Line& first = in.peek();
  if (first.text.substr(0, 5) != "kind=") return DocumentKind::function;
  const std::string_view kind = detail::expect_kind(in);
  if (kind == "tree") return DocumentKind::tree;
  if (kind == "protocol") return DocumentKind::protocol;
  if (kind == "tiling") return DocumentKind::tiling;
  throw ParseError(first.number, 6, "unknown document kind '" + std::string(kind) + "'");
}

}  // namespace compcc::io
