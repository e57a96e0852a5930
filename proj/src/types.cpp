#include "intcx/types.hpp"

#include <algorithm>
#include <cmath>

namespace intcx {

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_u128(std::string_view text) {
  if (text.empty()) throw Error("empty integer");
  constexpr u128 kMax = ~u128{0};
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error("invalid digit in integer '" + std::string(text) + "'");
    const auto digit = static_cast<unsigned>(c - '0');
    if (value > (kMax - digit) / 10) throw Error("integer out of range: " + std::string(text));
    value = value * 10 + digit;
  }
  return value;
}

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  r = std::min<u64>(r, 0xFFFFFFFFull);
  while (r * r > n) --r;
  while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

u128 isqrt(u128 n) {
  if (n <= ~u64{0}) return isqrt(static_cast<u64>(n));
  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  const u128 kCap = ~u64{0};
  if (r > kCap) r = kCap;
  while (r * r > n) --r;
  while (r < kCap && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace intcx
