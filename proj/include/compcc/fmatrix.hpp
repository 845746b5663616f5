#pragma once

// Two-party functions as bit matrices, geometric rectangles and tilings.
// Row index = Alice's input x, column index = Bob's input y.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "compcc/boolfn.hpp"
#include "compcc/error.hpp"

namespace compcc {

inline constexpr int kMaxMatrixArity = 8;

class FunctionMatrix {
 public:
  FunctionMatrix(std::size_t rows, std::size_t cols, std::vector<Bit> bits)
      : rows_(rows), cols_(cols), bits_(std::move(bits)) {
    if (rows_ == 0 || cols_ == 0) fail(ErrorKind::invalid_argument, "matrix must be non-empty");
    if (bits_.size() != rows_ * cols_) {
      fail(ErrorKind::invalid_argument, "matrix data size does not match its shape");
    }
    for (const Bit b : bits_) {
      if (b > 1) fail(ErrorKind::invalid_argument, "matrix entries must be 0 or 1");
    }
  }

  template <typename F>
  static FunctionMatrix from_function(int n, F&& f) {
    check_arity(n);
    const std::size_t side = std::size_t{1} << n;
    std::vector<Bit> bits(side * side);
    for (std::size_t x = 0; x < side; ++x) {
      for (std::size_t y = 0; y < side; ++y) {
        bits[x * side + y] = static_cast<Bit>(f(static_cast<Input>(x), static_cast<Input>(y)) ? 1 : 0);
      }
    }
    return FunctionMatrix(side, side, std::move(bits));
  }

  static void check_arity(int n) {
    if (n < 1 || n > kMaxMatrixArity) {
      fail(ErrorKind::invalid_argument, "matrix arity " + std::to_string(n) + " outside [1, " +
                                            std::to_string(kMaxMatrixArity) + "]");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Bit operator()(std::size_t x, std::size_t y) const { return bits_[x * cols_ + y]; }
  const std::vector<Bit>& bits() const noexcept { return bits_; }

  // Per-party arity when the matrix is 2^n x 2^n, otherwise empty.
  std::optional<int> arity() const noexcept {
    if (rows_ != cols_) return std::nullopt;
    for (int n = 1; n <= kMaxMatrixArity; ++n) {
      if ((std::size_t{1} << n) == rows_) return n;
    }
    return std::nullopt;
  }

  int require_arity() const {
    const auto n = arity();
    if (!n) fail(ErrorKind::invalid_argument, "operation needs a 2^n x 2^n function matrix");
    return *n;
  }

  FunctionMatrix transpose() const {
    std::vector<Bit> t(bits_.size());
    for (std::size_t x = 0; x < rows_; ++x) {
      for (std::size_t y = 0; y < cols_; ++y) t[y * rows_ + x] = (*this)(x, y);
    }
    return FunctionMatrix(cols_, rows_, std::move(t));
  }

  FunctionMatrix complement() const {
    std::vector<Bit> c(bits_);
    for (Bit& b : c) b ^= 1U;
    return FunctionMatrix(rows_, cols_, std::move(c));
  }

  friend bool operator==(const FunctionMatrix&, const FunctionMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Bit> bits_;
};

// Product of inclusive index intervals [x_lo, x_hi] x [y_lo, y_hi].
struct GeoRect {
  std::size_t x_lo = 0;
  std::size_t x_hi = 0;
  std::size_t y_lo = 0;
  std::size_t y_hi = 0;

  std::size_t height() const noexcept { return x_hi - x_lo + 1; }
  std::size_t width() const noexcept { return y_hi - y_lo + 1; }
  std::size_t area() const noexcept { return height() * width(); }

  bool contains(std::size_t x, std::size_t y) const noexcept {
    return x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi;
  }

  bool well_formed() const noexcept { return x_lo <= x_hi && y_lo <= y_hi; }

  bool fits(std::size_t rows, std::size_t cols) const noexcept {
    return well_formed() && x_hi < rows && y_hi < cols;
  }

  friend auto operator<=>(const GeoRect&, const GeoRect&) = default;
};

inline GeoRect full_rect(const FunctionMatrix& m) { return {0, m.rows() - 1, 0, m.cols() - 1}; }

struct Tile {
  GeoRect rect;
  Bit color = 0;

  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct Tiling {
  std::vector<Tile> tiles;

  // Canonical order: by rectangle, then color.
  void canonicalize() { std::sort(tiles.begin(), tiles.end()); }

  friend bool operator==(const Tiling&, const Tiling&) = default;
};

namespace generators {

// popcount(x) xor popcount(y), i.e. the parity of all 2n input bits.
inline FunctionMatrix parity(int n) {
  return FunctionMatrix::from_function(n, [](Input x, Input y) {
    return (__builtin_popcount(x) + __builtin_popcount(y)) & 1;
  });
}

inline FunctionMatrix checkerboard(int n) {
  return FunctionMatrix::from_function(n, [](Input x, Input y) { return (x + y) & 1U; });
}

inline FunctionMatrix greater_equal(int n) {
  return FunctionMatrix::from_function(n, [](Input x, Input y) { return y >= x; });
}

inline FunctionMatrix equality(int n) {
  return FunctionMatrix::from_function(n, [](Input x, Input y) { return x == y; });
}

inline FunctionMatrix constant(int n, Bit value) {
  return FunctionMatrix::from_function(n, [value](Input, Input) { return value; });
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames = {"parity",   "checkerboard", "greater_equal",
                                                  "equality", "constant0",    "constant1"};
  return kNames;
}

}  // namespace generators

inline FunctionMatrix generate(std::string_view name, int n) {
  if (name == "parity") return generators::parity(n);
  if (name == "checkerboard") return generators::checkerboard(n);
  if (name == "greater_equal") return generators::greater_equal(n);
  if (name == "equality") return generators::equality(n);
  if (name == "constant0") return generators::constant(n, 0);
  if (name == "constant1") return generators::constant(n, 1);
  fail(ErrorKind::invalid_argument, "unknown generator '" + std::string(name) + "'");
}

inline std::optional<Bit> is_monochromatic(const FunctionMatrix& m, const GeoRect& r) {
  if (!r.fits(m.rows(), m.cols())) fail(ErrorKind::invalid_argument, "rectangle outside the matrix");
  const Bit color = m(r.x_lo, r.y_lo);
  for (std::size_t x = r.x_lo; x <= r.x_hi; ++x) {
    for (std::size_t y = r.y_lo; y <= r.y_hi; ++y) {
      if (m(x, y) != color) return std::nullopt;
    }
  }
  return color;
}

enum class TilingFailure { none, out_of_bounds, overlap, uncovered, color_mismatch };

inline const char* to_string(TilingFailure f) {
  switch (f) {
    case TilingFailure::none: return "none";
    case TilingFailure::out_of_bounds: return "out_of_bounds";
    case TilingFailure::overlap: return "overlap";
    case TilingFailure::uncovered: return "uncovered";
    case TilingFailure::color_mismatch: return "color_mismatch";
  }
  return "unknown";
}

struct TilingVerdict {
  bool valid = false;
  TilingFailure failure = TilingFailure::none;
  std::optional<std::size_t> tile;                          // offending tile index
  std::optional<std::pair<std::size_t, std::size_t>> cell;  // witness (x, y)

  std::string describe() const {
    if (valid) return "valid";
    std::string s = to_string(failure);
    if (tile) s += " at tile " + std::to_string(*tile);
    if (cell) s += " cell (" + std::to_string(cell->first) + "," + std::to_string(cell->second) + ")";
    return s;
  }
};

// Checks bounds, then disjointness, then coverage, then colors, and reports
// the first violation in that order.
inline TilingVerdict verify_tiling(const FunctionMatrix& m, const Tiling& t) {
  TilingVerdict v;
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    if (!t.tiles[i].rect.fits(m.rows(), m.cols())) {
      v.failure = TilingFailure::out_of_bounds;
      v.tile = i;
      return v;
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(m.rows() * m.cols(), kFree);
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    const GeoRect& r = t.tiles[i].rect;
    for (std::size_t x = r.x_lo; x <= r.x_hi; ++x) {
      for (std::size_t y = r.y_lo; y <= r.y_hi; ++y) {
        std::size_t& o = owner[x * m.cols() + y];
        if (o != kFree) {
          v.failure = TilingFailure::overlap;
          v.tile = i;
          v.cell = {x, y};
          return v;
        }
        o = i;
      }
    }
  }
  for (std::size_t x = 0; x < m.rows(); ++x) {
    for (std::size_t y = 0; y < m.cols(); ++y) {
      if (owner[x * m.cols() + y] == kFree) {
        v.failure = TilingFailure::uncovered;
        v.cell = {x, y};
        return v;
      }
    }
  }
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    const GeoRect& r = t.tiles[i].rect;
    for (std::size_t x = r.x_lo; x <= r.x_hi; ++x) {
      for (std::size_t y = r.y_lo; y <= r.y_hi; ++y) {
        if (m(x, y) != t.tiles[i].color) {
          v.failure = TilingFailure::color_mismatch;
          v.tile = i;
          v.cell = {x, y};
          return v;
        }
      }
    }
  }
  v.valid = true;
  return v;
}

// Exact rank over Q by fraction-free (Bareiss) elimination on integers.
inline std::size_t rank(const FunctionMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<BigInt> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) a[i] = m.bits()[i];
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * cols + c]; };

  BigInt prev_pivot = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(at(pivot, k), at(r, k));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        // Exact by Sylvester's identity.
        at(i, k) = (at(r, c) * at(i, k) - at(i, c) * at(r, k)) / prev_pivot;
      }
      at(i, c) = 0;
    }
    prev_pivot = at(r, c);
    ++r;
  }
  return r;
}

}  // namespace compcc
