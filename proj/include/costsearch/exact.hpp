#pragma once

// Checked 128-bit integer arithmetic. Every cost, sketch coefficient and DP
// value in the library is an exact integer of this type; any operation that
// would wrap throws OverflowError instead.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "costsearch/errors.hpp"

namespace costsearch {

using Int = __int128;

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r = mul(r, base);
  return r;
}

/// Binomial coefficient C(m, j); small arguments only (degrees, not sizes).
Int binomial(int m, int j);

std::string to_string(Int v);
std::ostream& operator<<(std::ostream& os, Int v);

/// Narrowing conversion; throws OverflowError when v does not fit.
std::int64_t to_int64(Int v);

/// Hash for keys built from exact integers.
struct IntVectorHash {
  std::size_t operator()(const std::vector<Int>& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
    for (Int v : key) {
      auto lo = static_cast<std::uint64_t>(v);
      auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) >> 64);
      for (std::uint64_t part : {lo, hi}) {
        part *= 0xff51afd7ed558ccdULL;
        part ^= part >> 33;
        h ^= part + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace costsearch
