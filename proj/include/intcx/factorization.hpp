#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "intcx/types.hpp"

namespace intcx {

struct PrimePower {
  u128 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization: primes strictly increasing, exponents >= 1.
using FactorMap = boost::container::small_vector<PrimePower, 12>;

/// Product of prime^exponent over the map (1 for the empty map). Wraps modulo 2^128.
u128 multiply_out(const FactorMap& factors);

/// Every divisor of the factored value, ascending.
std::vector<u128> divisors(const FactorMap& factors);

/// Calls fn(d) for every divisor d (unspecified order).
template <typename Fn>
void for_each_divisor(const FactorMap& factors, Fn&& fn) {
  boost::container::small_vector<u128, 256> acc{1};
  for (const auto& [prime, exponent] : factors) {
    const std::size_t existing = acc.size();
    u128 power = 1;
    for (unsigned e = 1; e <= exponent; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < existing; ++i) acc.push_back(acc[i] * power);
    }
  }
  for (u128 d : acc) fn(d);
}

/// Lists of divisors D_1..D_N in compressed rows, built by the multiples loop.
class DivisorLists {
 public:
  /// Default budget on the total number of stored divisors.
  static constexpr u64 kDefaultEntryBudget = u64{1} << 27;

  /// Throws Error before allocating when sum_{i<=N} floor(N/i) exceeds the budget.
  explicit DivisorLists(u64 n, u64 entry_budget = kDefaultEntryBudget);

  u64 limit() const { return n_; }
  /// Ascending divisors of k, 1 <= k <= limit().
  std::span<const std::uint32_t> of(u64 k) const;
  u64 total_entries() const { return entries_.size(); }

 private:
  u64 n_;
  std::vector<u64> offsets_;
  std::vector<std::uint32_t> entries_;
};

/// sum_{i=1}^{n} floor(n/i), evaluated in O(sqrt n).
u64 divisor_summatory(u64 n);

/// Smallest-prime-factor table for 2..N.
class SpfSieve {
 public:
  explicit SpfSieve(u64 n);

  u64 limit() const { return spf_.empty() ? 0 : spf_.size() - 1; }
  std::uint32_t smallest_factor(u64 n) const;
  FactorMap factorize(u64 n) const;

 private:
  std::vector<std::uint32_t> spf_;
};

/// Ascending divisors of n read off the sieve. Throws Error when n is out of range.
std::vector<u64> divisors_of(u64 n, const SpfSieve& sieve);

/// Exact primality for n < 2^128: deterministic Miller-Rabin below 3.3e24, and
/// Miller-Rabin on the first 13 prime bases plus a strong Lucas test above.
bool is_prime(u128 n);

/// Complete factorization by trial division, then Pollard rho (Brent) on the cofactor.
/// Deterministic: polynomial constants are tried in a fixed order.
FactorMap factorize(u128 n);

/// Trial division only; slow, kept as an independent route for tests.
FactorMap factorize_trial(u128 n);

/// Factorization front end for the engines: sieve lookup when the value is in
/// range, otherwise factorize(). The sieve must outlive the factorizer.
class Factorizer {
 public:
  explicit Factorizer(const SpfSieve* sieve = nullptr) : sieve_(sieve) {}

  FactorMap operator()(u128 n) const;
  const SpfSieve* sieve() const { return sieve_; }

 private:
  const SpfSieve* sieve_;
};

}  // namespace intcx
