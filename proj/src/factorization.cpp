#include "intcx/factorization.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace intcx {

namespace {

// ---------------------------------------------------------------------------
// Montgomery arithmetic

u64 inverse_mod_2_64(u64 n) {
  u64 inv = n;  // correct to 3 bits for odd n
  for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
  return inv;
}

u128 inverse_mod_2_128(u128 n) {
  u128 inv = n;
  for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
  return inv;
}

struct Mont64 {
  using Word = u64;
  u64 n;
  u64 inv;
  u64 r2;
  u64 one_;
  u64 minus_one_;

  explicit Mont64(u64 modulus) : n(modulus), inv(inverse_mod_2_64(modulus)) {
    const u64 r = (0 - n) % n;
    r2 = static_cast<u64>(static_cast<u128>(r) * r % n);
    one_ = r;
    minus_one_ = n - r;
  }

  u64 redc(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv;
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 mn = static_cast<u64>((static_cast<u128>(m) * n) >> 64);
    return hi >= mn ? hi - mn : hi + (n - mn);
  }
  u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
  u64 to(u128 x) const { return mul(static_cast<u64>(x % n), r2); }
  u64 from(u64 x) const { return redc(x); }
  u64 add(u64 a, u64 b) const { return a >= n - b ? a - (n - b) : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (n - b); }
  u64 one() const { return one_; }
  u64 minus_one() const { return minus_one_; }
  u128 modulus() const { return n; }
};

struct Wide {
  u128 hi;
  u128 lo;
};

Wide mul_wide(u128 a, u128 b) {
  const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
  const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (mid << 64) | static_cast<u64>(p00)};
}

// Requires n < 2^127 so that sums of two residues never overflow.
struct Mont128 {
  using Word = u128;
  u128 n;
  u128 inv;
  u128 r2;
  u128 one_;
  u128 minus_one_;

  explicit Mont128(u128 modulus) : n(modulus), inv(inverse_mod_2_128(modulus)) {
    const u128 r = (0 - n) % n;
    u128 acc = r;
    for (int i = 0; i < 128; ++i) {
      acc <<= 1;
      if (acc >= n) acc -= n;
    }
    r2 = acc;
    one_ = r;
    minus_one_ = n - r;
  }

  u128 redc(const Wide& t) const {
    const u128 m = t.lo * inv;
    const u128 mn = mul_wide(m, n).hi;
    return t.hi >= mn ? t.hi - mn : t.hi + (n - mn);
  }
  u128 mul(u128 a, u128 b) const { return redc(mul_wide(a, b)); }
  u128 to(u128 x) const { return mul(x % n, r2); }
  u128 from(u128 x) const { return redc({0, x}); }
  u128 add(u128 a, u128 b) const { return a >= n - b ? a - (n - b) : a + b; }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n - b); }
  u128 one() const { return one_; }
  u128 minus_one() const { return minus_one_; }
  u128 modulus() const { return n; }
};

template <typename M>
typename M::Word mont_pow(const M& m, typename M::Word base, u128 exp) {
  typename M::Word result = m.one();
  while (exp > 0) {
    if (exp & 1) result = m.mul(result, base);
    base = m.mul(base, base);
    exp >>= 1;
  }
  return result;
}

template <typename M>
bool strong_probable_prime(const M& m, u128 base) {
  const u128 n = m.modulus();
  base %= n;
  if (base == 0) return true;
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto x = mont_pow(m, m.to(base), d);
  if (x == m.one() || x == m.minus_one()) return true;
  for (int r = 1; r < s; ++r) {
    x = m.mul(x, x);
    if (x == m.minus_one()) return true;
  }
  return false;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int jacobi(u128 a, u128 n) {
  int t = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const auto r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

// Strong Lucas probable-prime test with Selfridge parameters (P = 1).
bool strong_lucas_probable_prime(u128 n) {
  const u128 root = isqrt(n);
  if (root * root == n) return false;
  long long d_signed = 5;
  for (;;) {
    const u128 d_mod = d_signed > 0 ? static_cast<u128>(d_signed) % n : n - static_cast<u128>(-d_signed) % n;
    const int j = jacobi(d_mod, n);
    if (j == -1) break;
    if (j == 0 && static_cast<u128>(d_signed > 0 ? d_signed : -d_signed) != n) return false;
    d_signed = d_signed > 0 ? -(d_signed + 2) : -d_signed + 2;
  }
  const Mont128 m(n);
  auto to_mod = [&](long long x) {
    const u128 r = x >= 0 ? static_cast<u128>(x) % n : n - static_cast<u128>(-x) % n;
    return m.to(r % n);
  };
  const u128 d_m = to_mod(d_signed);
  const u128 q_m = to_mod((1 - d_signed) / 4);
  auto half = [&](u128 x) { return (x & 1) ? (x + n) >> 1 : x >> 1; };

  u128 k = n + 1;
  int s = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++s;
  }
  u128 u = m.one();  // U_1
  u128 v = m.one();  // V_1 = P
  u128 qk = q_m;
  int top = 127;
  while (((k >> top) & 1) == 0) --top;
  for (int b = top - 1; b >= 0; --b) {
    u = m.mul(u, v);
    v = m.sub(m.mul(v, v), m.add(qk, qk));
    qk = m.mul(qk, qk);
    if ((k >> b) & 1) {
      const u128 nu = half(m.add(u, v));
      const u128 nv = half(m.add(m.mul(d_m, u), v));
      u = nu;
      v = nv;
      qk = m.mul(qk, q_m);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = m.sub(m.mul(v, v), m.add(qk, qk));
    qk = m.mul(qk, qk);
    if (v == 0) return true;
  }
  return false;
}

constexpr std::array<std::uint32_t, 13> kFirstPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// psi_13: Miller-Rabin on the first 13 primes is exact below this bound.
const u128 kPsi13 = static_cast<u128>(3317044ull) * 1000000000000000000ull + 64679887385961981ull;

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  const Mont64 m(n);
  for (u64 base : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    if (!strong_probable_prime(m, base)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Trial division

constexpr unsigned kTrialLimit = 256;

struct TrialPrime {
  std::uint32_t p;
  u64 inverse;  // p^{-1} mod 2^64
  u64 limit;    // (2^64 - 1) / p
};

const std::vector<TrialPrime>& trial_primes() {
  static const std::vector<TrialPrime> primes = [] {
    std::vector<TrialPrime> out;
    for (std::uint32_t p = 3; p < kTrialLimit; p += 2) {
      bool prime = true;
      for (std::uint32_t q = 3; q * q <= p; q += 2) {
        if (p % q == 0) prime = false;
      }
      if (prime) out.push_back({p, inverse_mod_2_64(p), ~u64{0} / p});
    }
    return out;
  }();
  return primes;
}

template <typename M>
u128 rho_with_constant(const M& m, typename M::Word c) {
  using W = typename M::Word;
  const u128 n = m.modulus();
  auto step = [&](W x) { return m.add(m.mul(x, x), c); };
  W y = m.to(2);
  W x = y;
  W ys = y;
  W q = m.one();
  u128 g = 1;
  constexpr u64 kBatch = 128;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 limit = std::min(kBatch, r - k);
      for (u64 i = 0; i < limit; ++i) {
        y = step(y);
        q = m.mul(q, x > y ? x - y : y - x);
      }
      g = gcd(q, n);
    }
    if (r > (u64{1} << 40)) break;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

// A nontrivial factor of an odd composite n.
u128 find_factor(u128 n) {
  for (u64 c = 1;; ++c) {
    u128 g;
    if (n <= ~u64{0}) {
      const Mont64 m(static_cast<u64>(n));
      g = rho_with_constant(m, m.to(c));
    } else {
      const Mont128 m(n);
      g = rho_with_constant(m, m.to(c));
    }
    if (g != 1 && g != n) return g;
  }
}

void factor_into(u128 n, std::vector<u128>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u128 d = find_factor(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

FactorMap collect(std::vector<u128>& primes) {
  std::sort(primes.begin(), primes.end());
  FactorMap out;
  for (u128 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

}  // namespace

u128 multiply_out(const FactorMap& factors) {
  u128 product = 1;
  for (const auto& [prime, exponent] : factors) {
    for (unsigned e = 0; e < exponent; ++e) product *= prime;
  }
  return product;
}

std::vector<u128> divisors(const FactorMap& factors) {
  std::vector<u128> out;
  for_each_divisor(factors, [&](u128 d) { out.push_back(d); });
  std::sort(out.begin(), out.end());
  return out;
}

u64 divisor_summatory(u64 n) {
  u64 total = 0;
  for (u64 i = 1; i <= n;) {
    const u64 q = n / i;
    const u64 last = n / q;
    total += q * (last - i + 1);
    i = last + 1;
  }
  return total;
}

DivisorLists::DivisorLists(u64 n, u64 entry_budget) : n_(n) {
  if (n == 0) throw Error("divisor lists need N >= 1");
  if (n > 0xFFFFFFFFull) throw Error("divisor lists are limited to N < 2^32");
  const u64 total = divisor_summatory(n);
  if (total > entry_budget) {
    throw Error("divisor lists for N=" + std::to_string(n) + " need " + std::to_string(total) +
                " entries, over the budget of " + std::to_string(entry_budget));
  }
  std::vector<std::uint32_t> counts(n + 1, 0);
  for (u64 i = 1; i <= n; ++i) {
    for (u64 k = i; k <= n; k += i) ++counts[k];
  }
  offsets_.assign(n + 2, 0);
  for (u64 k = 1; k <= n; ++k) offsets_[k + 1] = offsets_[k] + counts[k];
  entries_.resize(total);
  std::vector<u64> cursor(offsets_.begin(), offsets_.end() - 1);
  for (u64 i = 1; i <= n; ++i) {
    for (u64 k = i; k <= n; k += i) entries_[cursor[k]++] = static_cast<std::uint32_t>(i);
  }
}

std::span<const std::uint32_t> DivisorLists::of(u64 k) const {
  if (k == 0 || k > n_) throw Error("divisor list index out of range");
  return {entries_.data() + offsets_[k], entries_.data() + offsets_[k + 1]};
}

SpfSieve::SpfSieve(u64 n) {
  if (n > 0xFFFFFFFFull) throw Error("SPF sieve is limited to N < 2^32");
  spf_.assign(n + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || p * i > n) break;
      spf_[p * i] = p;
    }
  }
}

std::uint32_t SpfSieve::smallest_factor(u64 n) const {
  if (n < 2 || n > limit()) throw Error("SPF sieve lookup out of range: " + std::to_string(n));
  return spf_[n];
}

FactorMap SpfSieve::factorize(u64 n) const {
  if (n == 0 || n > limit()) throw Error("SPF sieve lookup out of range: " + std::to_string(n));
  FactorMap out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    out.push_back({p, e});
  }
  return out;
}

std::vector<u64> divisors_of(u64 n, const SpfSieve& sieve) {
  std::vector<u64> out;
  for_each_divisor(sieve.factorize(n), [&](u128 d) { out.push_back(static_cast<u64>(d)); });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(u128 n) {
  if (n <= ~u64{0}) return is_prime_u64(static_cast<u64>(n));
  for (std::uint32_t p : kFirstPrimes) {
    if (n % p == 0) return false;
  }
  if (n >= kMaxTarget) {
    // Montgomery residues need headroom; fall back to trial division for
    // the top bit, which no engine reaches.
    throw Error("is_prime: values >= 2^127 are not supported");
  }
  const Mont128 m(n);
  for (std::uint32_t base : kFirstPrimes) {
    if (!strong_probable_prime(m, base)) return false;
  }
  if (n < kPsi13) return true;
  return strong_lucas_probable_prime(n);
}

FactorMap factorize(u128 n) {
  if (n == 0) throw Error("factorize: n must be positive");
  if (n > kMaxTarget) throw Error("factorize: n exceeds 2^127");
  std::vector<u128> primes;
  while ((n & 1) == 0) {
    primes.push_back(2);
    n >>= 1;
  }
  if (n <= ~u64{0}) {
    u64 m = static_cast<u64>(n);
    for (const auto& tp : trial_primes()) {
      if (static_cast<u64>(tp.p) * tp.p > m) break;
      while (m * tp.inverse <= tp.limit) {
        primes.push_back(tp.p);
        m = m * tp.inverse;  // exact division
      }
    }
    n = m;
  } else {
    for (const auto& tp : trial_primes()) {
      while (n % tp.p == 0) {
        primes.push_back(tp.p);
        n /= tp.p;
      }
    }
  }
  if (n > 1) {
    if (n < static_cast<u128>(kTrialLimit) * kTrialLimit) {
      primes.push_back(n);
    } else {
      factor_into(n, primes);
    }
  }
  return collect(primes);
}

FactorMap factorize_trial(u128 n) {
  if (n == 0) throw Error("factorize_trial: n must be positive");
  std::vector<u128> primes;
  for (u128 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return collect(primes);
}

FactorMap Factorizer::operator()(u128 n) const {
  if (sieve_ != nullptr && n <= sieve_->limit() && n >= 1) return sieve_->factorize(static_cast<u64>(n));
  return factorize(n);
}

}  // namespace intcx
