#include "intcx/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace intcx {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::uint256_t;

// Entries k = 0..kTableSize-1; covers every budget a Complexity can hold.
constexpr int kTableSize = 256;

cpp_int icbrt(const cpp_int& x) {
  cpp_int lo = 0;
  cpp_int hi = 1;
  while (hi * hi * hi <= x) hi <<= 1;
  while (hi - lo > 1) {
    cpp_int mid = (lo + hi) >> 1;
    if (mid * mid * mid <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// cube_floor[k] = floor(3^(k/3)), the largest m with m^3 <= 3^k.
struct CubeRootTable {
  std::array<uint256_t, kTableSize> wide{};
  std::array<u128, kTableSize> narrow{};  // saturated at 2^128 - 1
  std::array<bool, kTableSize> saturated{};

  CubeRootTable() {
    cpp_int pow3 = 1;
    const cpp_int u128_max = (cpp_int(1) << 128) - 1;
    for (int k = 0; k < kTableSize; ++k) {
      const cpp_int m = icbrt(pow3);
      wide[k] = static_cast<uint256_t>(m);
      saturated[k] = m > u128_max;
      const cpp_int clipped = saturated[k] ? u128_max : m;
      const auto hi = static_cast<u64>(clipped >> 64);
      const auto lo = static_cast<u64>(clipped & cpp_int(~u64{0}));
      narrow[k] = (u128{hi} << 64) | lo;
      pow3 *= 3;
    }
  }
};

const CubeRootTable& cube_roots() {
  static const CubeRootTable table;
  return table;
}

}  // namespace

Limits::Limits(double alpha, std::optional<double> alpha0) : alpha_(alpha), alpha0_(alpha0) {
  validate(alpha_);
  if (alpha0_) validate(*alpha0_);
}

void Limits::set_alpha(double alpha) {
  validate(alpha);
  alpha_ = alpha;
}

void Limits::set_alpha0(std::optional<double> alpha0) {
  if (alpha0) validate(*alpha0);
  alpha0_ = alpha0;
}

void Limits::validate(double alpha) {
  // ell = alpha/3 - 1 must lie in (0, 0.5).
  if (!(alpha > 3.0 && alpha < 4.5)) {
    throw Error("alpha must lie in (3, 4.5), got " + std::to_string(alpha));
  }
}

Complexity lower_bound(u128 n) {
  if (n == 0) throw Error("lower_bound: n must be positive");
  const auto& table = cube_roots();
  // narrow[] is nondecreasing; first k with n <= floor(3^(k/3)).
  const auto it = std::lower_bound(table.narrow.begin(), table.narrow.end(), n);
  return static_cast<Complexity>(it - table.narrow.begin());
}

Complexity upper_bound(u128 n, const Limits& limits) {
  if (n < 2) throw Error("upper_bound is defined for n >= 2");
  const long double log3n = std::log(static_cast<long double>(n)) / std::log(3.0L);
  long double bound = static_cast<long double>(limits.alpha()) * log3n;
  bound = std::nextafter(bound, std::numeric_limits<long double>::infinity());
  const long double floored = std::floor(bound);
  if (floored >= kMaxFinite) return kMaxFinite;
  return static_cast<Complexity>(floored);
}

long double pow_ell(u128 n, double ell) {
  return std::pow(static_cast<long double>(n), static_cast<long double>(ell));
}

u64 addendum_limit(u128 n, const Limits& limits) {
  if (n == 0) throw Error("addendum_limit: n must be positive");
  long double x = pow_ell(n, limits.ell());
  x = std::nextafter(x, std::numeric_limits<long double>::infinity());
  const auto cap = static_cast<u64>(std::ceil(x));
  return std::max<u64>(cap, 16);
}

bool log3_product_within(u128 x, u128 y, unsigned budget) {
  if (budget >= static_cast<unsigned>(kTableSize)) return true;
  const auto& table = cube_roots();
  u128 product = 0;
  if (!__builtin_mul_overflow(x, y, &product) && !table.saturated[budget]) {
    return product <= table.narrow[budget];
  }
  const uint256_t wide = uint256_t(static_cast<u64>(x >> 64)) << 64 | uint256_t(static_cast<u64>(x));
  const uint256_t other = uint256_t(static_cast<u64>(y >> 64)) << 64 | uint256_t(static_cast<u64>(y));
  return wide * other <= table.wide[budget];
}

}  // namespace intcx
