#pragma once

// One-dimensional boolean functions {0,1}^n -> {0,1} as truth tables.
//
// Inputs are encoded MSB-first, so the lexicographic order on bit strings is
// the integer order on indices. Every other module relies on this encoding.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "compcc/error.hpp"

namespace compcc {

using Bit = std::uint8_t;
using Input = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxArity = 20;
inline constexpr int kEnumerationCap = 4;

class TruthTable {
 public:
  TruthTable(int n, std::vector<Bit> values) : n_(n), values_(std::move(values)) {
    if (n_ < 1 || n_ > kMaxArity) {
      fail(ErrorKind::invalid_argument,
           "truth table arity " + std::to_string(n_) + " outside [1, " +
               std::to_string(kMaxArity) + "]");
    }
    if (values_.size() != (std::size_t{1} << n_)) {
      fail(ErrorKind::invalid_argument,
           "truth table of arity " + std::to_string(n_) + " needs " +
               std::to_string(std::size_t{1} << n_) + " values, got " +
               std::to_string(values_.size()));
    }
    for (const Bit b : values_) {
      if (b > 1) fail(ErrorKind::invalid_argument, "truth table values must be 0 or 1");
    }
  }

  template <typename F>
  static TruthTable from_function(int n, F&& f) {
    if (n < 1 || n > kMaxArity) {
      fail(ErrorKind::invalid_argument, "truth table arity out of range");
    }
    std::vector<Bit> values(std::size_t{1} << n);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = static_cast<Bit>(f(static_cast<Input>(i)) ? 1 : 0);
    }
    return TruthTable(n, std::move(values));
  }

  // Bits of `mask` (low 2^n bits) as a table; index i is bit i of mask.
  static TruthTable from_mask(int n, std::uint64_t mask) {
    return from_function(n, [mask](Input i) { return (mask >> i) & 1U; });
  }

  static TruthTable from_string(int n, std::string_view bits) {
    std::vector<Bit> values;
    values.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1') {
        fail(ErrorKind::invalid_argument, "truth table string must contain only 0/1");
      }
      values.push_back(static_cast<Bit>(c - '0'));
    }
    return TruthTable(n, std::move(values));
  }

  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  Bit operator()(Input i) const { return values_.at(i); }
  std::span<const Bit> values() const noexcept { return values_; }

  std::string to_string() const {
    std::string s;
    s.reserve(values_.size());
    for (Bit b : values_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  TruthTable complement() const {
    std::vector<Bit> v(values_);
    for (Bit& b : v) b ^= 1U;
    return TruthTable(n_, std::move(v));
  }

  bool is_constant() const {
    for (Bit b : values_) {
      if (b != values_.front()) return false;
    }
    return true;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::vector<Bit> values_;
};

// Named one-dimensional functions.
namespace tables {

inline TruthTable constant(int n, Bit value) {
  return TruthTable::from_function(n, [value](Input) { return value; });
}

// theta_x(y) = 1 iff y >= x.
inline TruthTable threshold(int n, Input x) {
  return TruthTable::from_function(n, [x](Input y) { return y >= x; });
}

// theta_{1^n}: one only on the all-ones input.
inline TruthTable all_ones_threshold(int n) {
  return threshold(n, static_cast<Input>((Input{1} << n) - 1));
}

// pi_n: the last input coordinate, i.e. the least significant bit.
inline TruthTable last_coordinate(int n) {
  return TruthTable::from_function(n, [](Input y) { return y & 1U; });
}

}  // namespace tables

// Maximal constant runs of a truth table. boundaries[j] is the last index of
// run j, so values[b] != values[b + 1] for every boundary b.
struct BlockDecomposition {
  int n = 0;
  std::vector<Input> boundaries;
  Bit first_value = 0;

  std::size_t block_count() const noexcept { return boundaries.size() + 1; }

  Bit block_value(std::size_t block) const noexcept {
    return static_cast<Bit>(first_value ^ (block & 1U));
  }

  TruthTable reconstruct() const {
    std::vector<Bit> values(std::size_t{1} << n);
    std::size_t block = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = block_value(block);
      if (block < boundaries.size() && boundaries[block] == i) ++block;
    }
    return TruthTable(n, std::move(values));
  }

  friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

inline BlockDecomposition blocks(const TruthTable& tt) {
  BlockDecomposition d;
  d.n = tt.arity();
  const auto v = tt.values();
  d.first_value = v.front();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] != v[i + 1]) d.boundaries.push_back(static_cast<Input>(i));
  }
  return d;
}

inline std::size_t mu(const TruthTable& tt) {
  std::size_t runs = 1;
  const auto v = tt.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) runs += (v[i] != v[i + 1]);
  return runs;
}

// ceil(log2(k)) for k >= 1.
inline int ceil_log2(std::uint64_t k) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < k) ++bits;
  return bits;
}

// Minimum comparison decision tree depth.
inline int dcomp(const TruthTable& tt) { return ceil_log2(mu(tt)); }

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// Number of functions on n bits with exactly k blocks: choose which of the
// 2^n - 1 gaps are boundaries, then the first value.
inline BigInt count_by_mu(int n, std::uint64_t k) {
  if (n < 1 || n > kMaxArity) fail(ErrorKind::invalid_argument, "arity out of range");
  const std::uint64_t size = std::uint64_t{1} << n;
  if (k < 1 || k > size) {
    fail(ErrorKind::invalid_argument,
         "block count " + std::to_string(k) + " outside [1, " + std::to_string(size) + "]");
  }
  return 2 * binomial(size - 1, k - 1);
}

// #{f : D^comp(f) = n} = 2^(2^n - 1).
inline BigInt count_max_complexity(int n) {
  if (n < 1 || n > kMaxArity) fail(ErrorKind::invalid_argument, "arity out of range");
  return BigInt(1) << ((std::size_t{1} << n) - 1);
}

// Exhaustive mu histogram over all 2^(2^n) functions.
inline std::map<std::size_t, std::uint64_t> enumerate_histogram(int n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "arity must be positive");
  if (n > kEnumerationCap) {
    fail(ErrorKind::cap_exceeded, "enumeration arity " + std::to_string(n) +
                                      " exceeds cap " + std::to_string(kEnumerationCap));
  }
  const std::size_t size = std::size_t{1} << n;
  const std::uint64_t functions = std::uint64_t{1} << size;
  std::map<std::size_t, std::uint64_t> histogram;
  for (std::uint64_t mask = 0; mask < functions; ++mask) {
    // Runs = 1 + number of adjacent differing bit pairs.
    const std::uint64_t diffs = (mask ^ (mask >> 1)) & ((std::uint64_t{1} << (size - 1)) - 1);
    ++histogram[1 + static_cast<std::size_t>(__builtin_popcountll(diffs))];
  }
  return histogram;
}

}  // namespace compcc
