#include "costsearch/exact.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace costsearch {

Int binomial(int m, int j) {
  if (j < 0 || j > m) return 0;
  Int r = 1;
  for (int i = 1; i <= j; ++i) r = mul(r, m - j + i) / i;
  return r;
}

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the magnitude as unsigned so INT128_MIN is handled.
  auto mag = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                      : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::ostream& operator<<(std::ostream& os, Int v) { return os << to_string(v); }

std::int64_t to_int64(Int v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("value " + to_string(v) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace costsearch
