#include "doctest.h"

#include <random>

#include "intcx/factorization.hpp"

using namespace intcx;

namespace {

bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

u128 pow_u128(u128 b, unsigned e) {
  u128 r = 1;
  while (e--) r *= b;
  return r;
}

u64 random_prime(std::mt19937_64& rng, unsigned bits) {
  for (;;) {
    const u64 c = (rng() >> (64 - bits)) | (u64{1} << (bits - 1)) | 1;
    if (trial_prime(c)) return c;
  }
}

}  // namespace

TEST_CASE("divisor lists") {
  const DivisorLists one(1);
  CHECK(std::vector<std::uint32_t>(one.of(1).begin(), one.of(1).end()) == std::vector<std::uint32_t>{1});
  const DivisorLists lists(10000);
  const auto d12 = lists.of(12);
  CHECK(std::vector<std::uint32_t>(d12.begin(), d12.end()) == std::vector<std::uint32_t>{1, 2, 3, 4, 6, 12});
  u64 direct = 0;
  for (u64 i = 1; i <= 10000; ++i) direct += 10000 / i;
  CHECK(lists.total_entries() == direct);
  CHECK(divisor_summatory(10000) == direct);
  CHECK_THROWS_AS(DivisorLists(1000000, 1000), Error);
}

TEST_CASE("spf sieve divisors") {
  const SpfSieve sieve(10000);
  CHECK(divisors_of(97, sieve) == std::vector<u64>{1, 97});
  CHECK(divisors_of(36, sieve) == std::vector<u64>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  CHECK_THROWS_AS(divisors_of(10001, sieve), Error);
  const DivisorLists lists(10000);
  for (u64 n = 2; n <= 10000; ++n) {
    const auto row = lists.of(n);
    REQUIRE(divisors_of(n, sieve) == std::vector<u64>(row.begin(), row.end()));
  }
}

TEST_CASE("is_prime examples and agreement with trial division") {
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(pow_u128(733, 6)));
  for (u64 n = 0; n <= 1000000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
}

TEST_CASE("is_prime on wide inputs") {
  // 2^127 - 1 is a Mersenne prime; 2^89 - 1 too.
  CHECK(is_prime((u128{1} << 127) - 1));
  CHECK(is_prime((u128{1} << 89) - 1));
  CHECK_FALSE(is_prime(((u128{1} << 89) - 1) * 3));
  // Strong pseudoprime to the first 13 prime bases (above the deterministic bound).
  CHECK_FALSE(is_prime(parse_u128("3317044064679887385961981")));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const u128 p = random_prime(rng, 40);
    CHECK(is_prime(p));
    CHECK_FALSE(is_prime(p * ((u128{1} << 61) - 1)));
  }
}

TEST_CASE("factorize examples") {
  CHECK(factorize(91) == FactorMap{{7, 1}, {13, 1}});
  CHECK(factorize(u128{1} << 64) == FactorMap{{2, 64}});
  CHECK(factorize(pow_u128(733, 6)) == FactorMap{{733, 6}});
  CHECK(factorize(1) == FactorMap{});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const u64 p = random_prime(rng, 40), q = random_prime(rng, 40);
    const auto f = factorize(static_cast<u128>(p) * q);
    REQUIRE(multiply_out(f) == static_cast<u128>(p) * q);
    CHECK(f == (p == q ? FactorMap{{p, 2}} : FactorMap{{std::min(p, q), 1}, {std::max(p, q), 1}}));
  }
  const u128 wide = static_cast<u128>(random_prime(rng, 38)) * ((u128{1} << 89) - 1);
  CHECK(multiply_out(factorize(wide)) == wide);
  CHECK(factorize(wide).size() == 2);
}

TEST_CASE("factorize agrees with sieve lists and trial division") {
  const DivisorLists lists(100000);
  for (u64 n = 2; n <= 100000; ++n) {
    const auto f = factorize(n);
    REQUIRE(multiply_out(f) == n);
    const auto row = lists.of(n);
    const auto ds = divisors(f);
    REQUIRE(ds.size() == row.size());
    for (std::size_t i = 0; i < ds.size(); ++i) REQUIRE(ds[i] == row[i]);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const u64 n = (rng() >> 30) + 2;
    REQUIRE(factorize(n) == factorize_trial(n));
  }
  const SpfSieve sieve(1000);
  const Factorizer with_sieve(&sieve);
  CHECK(with_sieve(360) == factorize(360));
  CHECK(with_sieve(1000003) == factorize(1000003));
}
