#pragma once

// Deterministic ASCII and SVG pictures of tilings.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "compcc/error.hpp"
#include "compcc/fmatrix.hpp"

namespace compcc {

namespace detail {

inline std::vector<std::size_t> tile_owner(const Tiling& t, std::size_t rows, std::size_t cols) {
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(rows * cols, kFree);
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    const GeoRect& r = t.tiles[i].rect;
    if (!r.fits(rows, cols)) fail(ErrorKind::invalid_argument, "tile outside the grid");
    for (std::size_t x = r.x_lo; x <= r.x_hi; ++x) {
      for (std::size_t y = r.y_lo; y <= r.y_hi; ++y) owner[x * cols + y] = i;
    }
  }
  return owner;
}

}  // namespace detail

// One character per cell ('0'/'1', '?' if uncovered) on a (2r+1) x (2c+1)
// canvas; '|' and '-' mark tile borders, '+' their corners and junctions.
inline std::string render_ascii(const Tiling& t, std::size_t rows, std::size_t cols) {
  const auto owner = detail::tile_owner(t, rows, cols);
  constexpr std::size_t kOutside = static_cast<std::size_t>(-2);
  auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(rows) || y >= static_cast<std::ptrdiff_t>(cols)) {
      return kOutside;
    }
    return owner[static_cast<std::size_t>(x) * cols + static_cast<std::size_t>(y)];
  };
  const std::size_t h = 2 * rows + 1;
  const std::size_t w = 2 * cols + 1;
  std::vector<std::string> canvas(h, std::string(w, ' '));
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      const std::size_t o = at(x, y);
      canvas[2 * x + 1][2 * y + 1] = o < t.tiles.size() ? static_cast<char>('0' + t.tiles[o].color) : '?';
    }
  }
  // Vertical borders sit between horizontally adjacent cells, and so on.
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y <= cols; ++y) {
      const auto xi = static_cast<std::ptrdiff_t>(x);
      const auto yi = static_cast<std::ptrdiff_t>(y);
      if (at(xi, yi - 1) != at(xi, yi)) canvas[2 * x + 1][2 * y] = '|';
    }
  }
  for (std::size_t x = 0; x <= rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      const auto xi = static_cast<std::ptrdiff_t>(x);
      const auto yi = static_cast<std::ptrdiff_t>(y);
      if (at(xi - 1, yi) != at(xi, yi)) canvas[2 * x][2 * y + 1] = '-';
    }
  }
  for (std::size_t x = 0; x <= rows; ++x) {
    for (std::size_t y = 0; y <= cols; ++y) {
      const bool up = x > 0 && canvas[2 * x - 1][2 * y] == '|';
      const bool down = x < rows && canvas[2 * x + 1][2 * y] == '|';
      const bool left = y > 0 && canvas[2 * x][2 * y - 1] == '-';
      const bool right = y < cols && canvas[2 * x][2 * y + 1] == '-';
      const bool vertical = up || down;
      const bool horizontal = left || right;
      if (vertical && horizontal) {
        canvas[2 * x][2 * y] = '+';
      } else if (horizontal) {
        canvas[2 * x][2 * y] = '-';
      } else if (vertical) {
        canvas[2 * x][2 * y] = '|';
      }
    }
  }
  std::string out;
  for (const auto& line : canvas) out += line + "\n";
  return out;
}

inline constexpr std::size_t kSvgCell = 16;

// One <rect> per tile in tiling order; color 1 is dark, color 0 light.
inline std::string render_svg(const Tiling& t, std::size_t rows, std::size_t cols) {
  detail::tile_owner(t, rows, cols);
  std::ostringstream s;
  const std::size_t width = cols * kSvgCell;
  const std::size_t height = rows * kSvgCell;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  for (const Tile& tile : t.tiles) {
    s << "  <rect x=\"" << tile.rect.y_lo * kSvgCell << "\" y=\"" << tile.rect.x_lo * kSvgCell
      << "\" width=\"" << tile.rect.width() * kSvgCell << "\" height=\"" << tile.rect.height() * kSvgCell
      << "\" fill=\"" << (tile.color ? "#303030" : "#f0f0f0")
      << "\" stroke=\"#c03030\" stroke-width=\"1\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace compcc
