#include "intcx/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace intcx::kernels {

namespace {

using u32 = std::uint32_t;

constexpr u64 kMod = kNttModulus;

u32 mul_mod(u32 a, u32 b) { return static_cast<u32>(static_cast<u64>(a) * b % kMod); }

u32 pow_mod(u64 base, u64 exp) {
  u64 result = 1;
  base %= kMod;
  while (exp > 0) {
    if (exp & 1) result = result * base % kMod;
    base = base * base % kMod;
    exp >>= 1;
  }
  return static_cast<u32>(result);
}

void check_size(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw Error("ntt size must be a power of two");
  if (n > (std::size_t{1} << kNttMaxLog)) throw Error("ntt size exceeds 2^30");
}

void bit_reverse(std::span<u32> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

// Twiddles for a stage of half-length `half`: w^0..w^(half-1).
std::vector<u32> stage_roots(std::size_t half, bool inverse) {
  u32 w = pow_mod(kNttRoot, (kMod - 1) / (2 * half));
  if (inverse) w = pow_mod(w, kMod - 2);
  std::vector<u32> roots(half);
  u32 cur = 1;
  for (std::size_t j = 0; j < half; ++j) {
    roots[j] = cur;
    cur = mul_mod(cur, w);
  }
  return roots;
}

// Stage twiddles for every half-length h = 1, 2, 4, ... stored at offset h - 1,
// with Shoup companions floor(w * 2^32 / p).
struct Twiddles {
  std::vector<u32> roots;
  std::vector<u32> shoup;
};

void build_twiddles(std::size_t n, bool inverse, Twiddles& tw) {
  tw.roots.assign(std::max<std::size_t>(n, 2) - 1, 0);
  tw.shoup.assign(tw.roots.size(), 0);
  for (std::size_t half = 1; half < n; half <<= 1) {
    const auto r = stage_roots(half, inverse);
    for (std::size_t j = 0; j < half; ++j) {
      tw.roots[half - 1 + j] = r[j];
      tw.shoup[half - 1 + j] = static_cast<u32>((u64{r[j]} << 32) / kMod);
    }
  }
}

constexpr unsigned kCachedTwiddleLog = 22;

// Cached per thread up to 2^22 points; larger sizes are built into `local`.
const Twiddles& twiddles(std::size_t n, bool inverse, Twiddles& local) {
  const unsigned log_n = static_cast<unsigned>(std::countr_zero(n));
  if (log_n > kCachedTwiddleLog) {
    build_twiddles(n, inverse, local);
    return local;
  }
  thread_local std::array<std::array<Twiddles, 2>, kCachedTwiddleLog + 1> cache;
  Twiddles& tw = cache[log_n][inverse ? 1 : 0];
  if (tw.roots.size() + 1 != std::max<std::size_t>(n, 2)) build_twiddles(n, inverse, tw);
  return tw;
}

// One radix-2 stage over x[0..m) and y[0..m) with twiddles w and their
// Shoup companions ws = floor(w * 2^32 / p).
void butterflies(u32* __restrict x, u32* __restrict y, const u32* __restrict w, const u32* __restrict ws,
                 std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    const u32 q = static_cast<u32>((u64{y[j]} * ws[j]) >> 32);
    u64 v = u64{y[j]} * w[j] - u64{q} * u32{kMod};
    v -= kMod & (0 - u64{v >= kMod});
    const u64 u = x[j];
    const u64 sum = u + v;
    const u64 diff = u + kMod - v;
    x[j] = static_cast<u32>(sum - (kMod & (0 - u64{sum >= kMod})));
    y[j] = static_cast<u32>(diff - (kMod & (0 - u64{diff >= kMod})));
  }
}

void scale_inverse(std::span<u32> a, bool use_threads) {
  const u32 inv_n = pow_mod(a.size(), kMod - 2);
  const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for if (use_threads) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) a[i] = mul_mod(a[i], inv_n);
}

// Infinite entries are widened to 512 so that any sum involving one is >= 512
// while finite sums stay <= 508.
using Wide = std::int16_t;
constexpr Wide kWideInf = 512;

Wide widen(Complexity v) { return v == kInfinity ? kWideInf : v; }

Complexity narrow(Wide v) {
  if (v >= kWideInf) return kInfinity;
  if (v > kMaxFinite) throw Error("(min,+) convolution: finite value exceeds 254");
  return static_cast<Complexity>(v);
}

// acc[k - k0] = min over i of a[i] + b[k - i], for k0 <= k < k1; row by row so
// the inner loop is contiguous.
void minplus_block(const std::vector<Wide>& a, const std::vector<Wide>& b, std::size_t k0, std::size_t k1, Wide* acc) {
  std::fill(acc, acc + (k1 - k0), static_cast<Wide>(2 * kWideInf));
  const std::size_t i_lo = k0 >= b.size() ? k0 - b.size() + 1 : 0;
  const std::size_t i_hi = std::min(k1 - 1, a.size() - 1);
  for (std::size_t i = i_lo; i <= i_hi; ++i) {
    const Wide ai = a[i];
    if (ai >= kWideInf) continue;
    const std::size_t j_lo = k0 > i ? k0 - i : 0;
    const std::size_t j_hi = std::min(b.size(), k1 - i);
    Wide* row = acc + (i + j_lo - k0);
    const Wide* bj = b.data() + j_lo;
    for (std::size_t j = 0; j < j_hi - j_lo; ++j) row[j] = std::min<Wide>(row[j], ai + bj[j]);
  }
}

void check_minplus_shapes(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out) {
  if (a.empty() || b.empty()) throw Error("(min,+) convolution of an empty sequence");
  if (out.size() != a.size() + b.size() - 1) throw Error("(min,+) convolution: output size mismatch");
}

std::vector<Wide> widen_all(std::span<const Complexity> v) {
  std::vector<Wide> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), widen);
  return out;
}

void sweep_range(std::span<Complexity> values, u64 lo, u64 hi) {
  if (lo >= hi) return;
  const u64 top = hi - 1;
  const u64 root = isqrt(top);
  for (u64 p = 2; p <= root; ++p) {
    const Complexity fp = values[p];
    if (fp == kInfinity) continue;
    u64 k = std::max(lo, p * p);
    k = (k + p - 1) / p * p;
    for (u64 q = k / p; k < hi; k += p, ++q) {
      const Complexity fq = values[q];
      const unsigned sum = unsigned{fp} + fq;
      if (sum < values[k]) values[k] = static_cast<Complexity>(sum);
    }
  }
}

void check_sweep(std::span<Complexity> values, u64 base, u64 count) {
  if (base < 2) throw Error("multiplicative sweep must start at 2 or later");
  if (count > base) throw Error("multiplicative sweep block longer than its base");
  if (base + count > values.size()) throw Error("multiplicative sweep out of range");
}

}  // namespace

namespace serial {

void ntt(std::span<u32> a, bool inverse) {
  check_size(a.size());
  bit_reverse(a);
  const std::size_t n = a.size();
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const auto roots = stage_roots(half, inverse);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const u32 u = a[i + j];
        const u32 v = mul_mod(a[i + j + half], roots[j]);
        a[i + j] = static_cast<u32>((u64{u} + v) % kMod);
        a[i + j + half] = static_cast<u32>((u64{u} + kMod - v) % kMod);
      }
    }
  }
  if (inverse) scale_inverse(a, false);
}

void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out) {
  check_minplus_shapes(a, b, out);
  const auto wa = widen_all(a);
  const auto wb = widen_all(b);
  std::vector<Wide> acc(out.size(), 2 * kWideInf);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const Wide ai = wa[i];
    if (ai >= kWideInf) continue;
    Wide* row = acc.data() + i;
    for (std::size_t j = 0; j < wb.size(); ++j) row[j] = std::min<Wide>(row[j], ai + wb[j]);
  }
  std::transform(acc.begin(), acc.end(), out.begin(), narrow);
}

void multiplicative_sweep(std::span<Complexity> values, u64 base, u64 count) {
  check_sweep(values, base, count);
  sweep_range(values, base, base + count);
}

}  // namespace serial

namespace parallel {

void ntt(std::span<u32> a, bool inverse) {
  check_size(a.size());
  bit_reverse(a);
  const std::size_t n = a.size();
  const bool use_threads = n >= (1u << 16) && max_threads() > 1;
  Twiddles local;
  const Twiddles& tw = twiddles(n, inverse, local);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const u32* roots = tw.roots.data() + half - 1;
    const u32* shoup = tw.shoup.data() + half - 1;
    const auto blocks = static_cast<std::int64_t>(n / len);
    if (blocks >= 64 || !use_threads) {
#pragma omp parallel for if (use_threads) schedule(static)
      for (std::int64_t b = 0; b < blocks; ++b) {
        u32* x = a.data() + static_cast<std::size_t>(b) * len;
        butterflies(x, x + half, roots, shoup, half);
      }
    } else {
      const std::int64_t chunks = 64;
      const std::size_t step = (half + chunks - 1) / chunks;
      for (std::int64_t b = 0; b < blocks; ++b) {
        u32* x = a.data() + static_cast<std::size_t>(b) * len;
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < chunks; ++c) {
          const std::size_t lo = std::min(half, static_cast<std::size_t>(c) * step);
          const std::size_t hi = std::min(half, lo + step);
          butterflies(x + lo, x + half + lo, roots + lo, shoup + lo, hi - lo);
        }
      }
    }
  }
  if (inverse) scale_inverse(a, use_threads);
}

void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out) {
  check_minplus_shapes(a, b, out);
  const auto wa = widen_all(a);
  const auto wb = widen_all(b);
  std::vector<Wide> acc(out.size());
  constexpr std::size_t kBlock = 2048;
  const auto blocks = static_cast<std::int64_t>((out.size() + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic, 1) if (blocks > 1 && wa.size() * wb.size() >= (1u << 18))
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    const std::size_t k0 = static_cast<std::size_t>(blk) * kBlock;
    const std::size_t k1 = std::min(out.size(), k0 + kBlock);
    minplus_block(wa, wb, k0, k1, acc.data() + k0);
  }
  std::transform(acc.begin(), acc.end(), out.begin(), narrow);
}

void multiplicative_sweep(std::span<Complexity> values, u64 base, u64 count) {
  check_sweep(values, base, count);
  const int threads = max_threads();
  const u64 chunk = std::max<u64>(4096, (count + threads - 1) / threads);
  const auto chunks = static_cast<std::int64_t>((count + chunk - 1) / chunk);
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const u64 lo = base + static_cast<u64>(c) * chunk;
    const u64 hi = std::min(base + count, lo + chunk);
    sweep_range(values, lo, hi);
  }
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int threads) {
  if (threads < 1) throw Error("thread count must be positive");
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

}  // namespace intcx::kernels
