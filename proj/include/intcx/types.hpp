#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace intcx {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Integer complexity value. Finite values are 1..254; 255 means unknown/infinite.
using Complexity = std::uint8_t;
inline constexpr Complexity kInfinity = 255;
inline constexpr Complexity kMaxFinite = 254;

/// Largest target accepted by the single-number engines (2^127).
inline constexpr u128 kMaxTarget = u128{1} << 127;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant of an engine was breached. Never recoverable.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

std::string to_string(u128 value);

/// Parses a decimal unsigned integer (no sign, no whitespace). Throws Error on
/// malformed input or overflow.
u128 parse_u128(std::string_view text);

/// Sum of two complexity values; any infinite operand yields infinity.
/// Throws Error when a finite sum exceeds kMaxFinite.
inline Complexity add_complexity(Complexity a, Complexity b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  const unsigned sum = unsigned{a} + unsigned{b};
  if (sum > kMaxFinite) throw Error("complexity sum exceeds 254");
  return static_cast<Complexity>(sum);
}

u64 isqrt(u64 n);
u128 isqrt(u128 n);

}  // namespace intcx
