#include "intcx/single_target.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <absl/container/flat_hash_map.h>

#include "intcx/kernels.hpp"

namespace intcx {

namespace {

constexpr u64 kMaxPrefix = u64{1} << 34;
// Below this the largest term of an optimal sum may be smaller than half the
// value; such values are always answered from the prefix.
constexpr u64 kMinFastPrefix = 1000;

u64 ceil_u64(long double x) {
  const long double c = std::ceil(x);
  if (c >= 18446744073709551615.0L) throw Error("single target: size parameter overflows 64 bits");
  return static_cast<u64>(c);
}

long double to_real(u128 v) { return static_cast<long double>(v); }

std::string describe(u128 v) { return to_string(v); }

// f'(v) for v within a dense table: best factor pair, infinity for primes.
Complexity table_fprime(const Complexity* f, u64 v, const Factorizer& factor) {
  if (v == 1) return 1;
  unsigned best = kInfinity;
  for_each_divisor(factor(v), [&](u128 d) {
    const u64 j = static_cast<u64>(d);
    if (j > 1 && j * j <= v) best = std::min(best, unsigned{f[j]} + f[v / j]);
  });
  return static_cast<Complexity>(best);
}

// Divisors 1 < j <= sqrt(v), ascending.
std::vector<u128> small_divisors(u128 v, const Factorizer& factor) {
  std::vector<u128> out;
  for_each_divisor(factor(v), [&](u128 j) {
    if (j > 1 && j <= v / j) out.push_back(j);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Holds either a borrowed shared table or a freshly computed one.
class Prefix {
 public:
  Prefix(u64 size, const SharedContext* shared) {
    if (shared != nullptr && shared->table().size() >= size) {
      values_ = shared->table().raw().data();
      size_ = size;
    } else {
      own_ = compute_table(size, Limits(), Engine::pruned);
      values_ = own_.raw().data();
      size_ = size;
    }
  }

  const Complexity* values() const { return values_; }
  u64 size() const { return size_; }

 private:
  ComplexityTable own_;
  const Complexity* values_ = nullptr;
  u64 size_ = 0;
};

// ---------------------------------------------------------------------------
// Reference engine: materialized windows below every r = floor(n/d).

struct Window {
  u64 r = 0;
  u64 lo = 0;
  u64 guaranteed_from = 0;
  u64 conv = 0;
  std::vector<Complexity> f;
  std::vector<Complexity> fp;
};

class WindowRun : public SingleTargetRun {
 public:
  WindowRun(u128 n, const Limits& limits, const SingleTargetOptions& options)
      : limits_(limits),
        options_(options),
        plan_(WindowPlan::make(n, limits, options.mode)),
        factor_(options.shared ? options.shared->sieve() : nullptr) {
    n_ = n;
    if (n > ~u64{0}) throw Error("the window engine supports n < 2^64; use fast mode");
    if (plan_.n0 > kMaxPrefix) {
      throw Error("prefix of " + std::to_string(plan_.n0) + " entries is too large for the window engine; use fast mode");
    }
    n64_ = static_cast<u64>(n);
    prefix_.emplace_back(plan_.n0, options.shared);
    pf_ = prefix_.front().values();
    stats_.prefix = plan_.n0;
    if (n64_ <= plan_.n0) {
      value_ = pf_[n64_];
      return;
    }
    plan_windows();
    for (u64 d = plan_.d_max; d >= 1; --d) fill_window(d);
    value_ = windows_[1].f[n64_ - windows_[1].lo];
  }

  Complexity f(u128 v) override {
    if (v == 0) throw Error("f(0) is undefined");
    if (v <= plan_.n0) return pf_[static_cast<u64>(v)];
    const Window* w = find_window(v, true);
    if (w == nullptr) throw Error("f(" + describe(v) + ") is not covered by this run");
    return w->f[static_cast<u64>(v) - w->lo];
  }

  Complexity fprime(u128 v) override {
    if (v == 0) throw Error("f'(0) is undefined");
    if (v <= plan_.n0) return table_fprime(pf_, static_cast<u64>(v), factor_);
    const Window* w = find_window(v, false);
    if (w == nullptr) throw Error("f'(" + describe(v) + ") is not covered by this run");
    return w->fp[static_cast<u64>(v) - w->lo];
  }

 private:
  // Window d covers [lo, r]. The W formula gives the default start; a window
  // is extended downwards when a caller's quotients reach below it.
  void plan_windows() {
    windows_.resize(plan_.d_max + 1);
    std::vector<u64> need(plan_.d_max + 1, ~u64{0});
    for (u64 d = 1; d <= plan_.d_max; ++d) {
      Window& w = windows_[d];
      w.r = n64_ / d;
      w.conv = plan_.conv_length(w.r);
      const u64 length = plan_.window_length(w.r);
      u64 lo = w.r > length ? w.r - length : 1;
      if (need[d] < lo + w.conv) {
        lo = need[d] > w.conv ? need[d] - w.conv : 1;
        ++stats_.extended_windows;
      }
      w.lo = lo;
      w.guaranteed_from = lo == 1 ? 1 : lo + w.conv;
      for (u64 j = 2; j * j <= w.r; ++j) {
        if (w.r / j <= plan_.n0) break;
        const u64 e = d * j;
        if (e > plan_.d_max) throw InvariantViolation("window index beyond d_max");
        need[e] = std::min(need[e], std::max(lo / j, plan_.n0 + 1));
      }
    }
  }

  // Window d * j, after checking that quotients [q_lo, q_hi] lie in its guaranteed range.
  const Window& target_window(u64 d, u64 j, u64 q_lo, u64 q_hi) {
    const u64 e = d * j;
    if (e > plan_.d_max) throw InvariantViolation("lookup window " + std::to_string(e) + " beyond d_max");
    const Window& w = windows_[e];
    if (w.r != windows_[d].r / j) throw InvariantViolation("nested floor identity fails for window " + std::to_string(e));
    if (q_lo < w.guaranteed_from || q_hi > w.r) {
      throw InvariantViolation("lookup of [" + std::to_string(q_lo) + ", " + std::to_string(q_hi) +
                               "] outside the guaranteed range [" + std::to_string(w.guaranteed_from) + ", " +
                               std::to_string(w.r) + "] of window " + std::to_string(e));
    }
    if (options_.debug_asserts) {
      const long double ell = plan_.ell;
      const long double outer = plan_.mode == WindowMode::global ? to_real(n_) : to_real(windows_[d].r);
      const long double inner = plan_.mode == WindowMode::global ? to_real(n_) : to_real(w.r);
      if (4.0L * std::pow(outer, ell) / static_cast<long double>(j) + 1 > 3.0L * std::pow(inner, ell) + kPad) {
        ++stats_.containment_slack_failures;
      }
    }
    return w;
  }

  Complexity lookup(u64 d, u64 j, u64 q) {
    ++stats_.lookups;
    const Window& w = target_window(d, j, q, q);
    const Complexity value = w.f[q - w.lo];
    if (value == kInfinity) throw InvariantViolation("window entry " + std::to_string(q) + " was never finalized");
    return value;
  }

  // f'(v) = min f(j) + f(v / j) over 1 < j <= sqrt(v), by walking the
  // multiples of every j through the window.
  void products_by_multiples(u64 d, Window& w) {
    for (u64 j = 2; j * j <= w.r; ++j) {
      const u64 q_hi = w.r / j;
      const u64 q_lo = std::max(j, (w.lo + j - 1) / j);
      if (q_lo > q_hi) continue;
      const unsigned fj = pf_[j];
      Complexity* out = w.fp.data() + (j * q_lo - w.lo);
      u64 q = q_lo;
      for (; q <= q_hi && q <= plan_.n0; ++q, out += j) {
        const unsigned cand = fj + pf_[q];
        if (cand < *out) *out = static_cast<Complexity>(cand);
      }
      if (q > q_hi) continue;
      const Window& src = target_window(d, j, q, q_hi);
      stats_.lookups += q_hi - q + 1;
      const Complexity* in = src.f.data() + (q - src.lo);
      for (; q <= q_hi; ++q, ++in, out += j) {
        const unsigned cand = fj + *in;
        if (cand < *out) *out = static_cast<Complexity>(cand);
      }
    }
    for (u64 v = w.lo; v <= std::min<u64>(w.r, 1); ++v) w.fp[v - w.lo] = 1;
  }

  void products_by_factoring(u64 d, Window& w) {
    for (u64 v = w.lo; v <= w.r; ++v) {
      if (v <= plan_.n0) {
        w.fp[v - w.lo] = table_fprime(pf_, v, factor_);
        continue;
      }
      unsigned best = kInfinity;
      for_each_divisor(factor_(v), [&](u128 jj) {
        const u64 j = static_cast<u64>(jj);
        if (j < 2 || j > v / j) return;
        const u64 q = v / j;
        const unsigned fq = q <= plan_.n0 ? pf_[q] : lookup(d, j, q);
        best = std::min(best, unsigned{pf_[j]} + fq);
      });
      w.fp[v - w.lo] = static_cast<Complexity>(best);
    }
  }

  void fill_window(u64 d) {
    Window& w = windows_[d];
    const u64 size = w.r - w.lo + 1;
    ++stats_.windows;
    stats_.window_entries += size;
    w.fp.assign(size, kInfinity);
    w.f.assign(size, kInfinity);

    // Phase A: products, reading quotients above n0 from deeper windows.
    if (options_.divisors == DivisorStrategy::multiples) {
      products_by_multiples(d, w);
    } else {
      products_by_factoring(d, w);
    }

    // Phase B: f(v) = min(f'(v), f(b) + f'(v - b)) for 1 <= b <= Lconv.
    const std::span<const Complexity> addends(pf_ + 1, w.conv);
    conv_.resize(size + addends.size() - 1);
    kernels::parallel::minplus(w.fp, addends, conv_);
    for (u64 i = 0; i < size; ++i) {
      const u64 v = w.lo + i;
      if (v <= plan_.n0) {
        w.f[i] = pf_[v];
      } else if (v >= w.guaranteed_from) {
        const Complexity sum = i >= 1 ? conv_[i - 1] : kInfinity;
        w.f[i] = std::min(w.fp[i], sum);
        if (options_.debug_asserts) check_bounds(v, w.f[i]);
      }
    }
  }

  void check_bounds(u64 v, Complexity value) const {
    if (value < lower_bound(v) || value > upper_bound(v, limits_)) {
      throw InvariantViolation("window value f(" + std::to_string(v) + ") = " + std::to_string(value) +
                               " violates the bounds");
    }
  }

  const Window* find_window(u128 v, bool need_guaranteed) const {
    if (v > n64_) return nullptr;
    const u64 x = static_cast<u64>(v);
    for (u64 d = std::min(n64_ / x, plan_.d_max); d >= 1; --d) {
      const Window& w = windows_[d];
      if (w.lo > x) break;
      if (x <= w.r && x >= (need_guaranteed ? w.guaranteed_from : w.lo) && !w.f.empty()) return &w;
    }
    return nullptr;
  }

  Limits limits_;
  SingleTargetOptions options_;
  WindowPlan plan_;
  Factorizer factor_;
  u64 n64_ = 0;
  std::vector<Prefix> prefix_;
  const Complexity* pf_ = nullptr;
  std::vector<Window> windows_;
  std::vector<Complexity> conv_;
};

// ---------------------------------------------------------------------------
// Fast engine: the same recursion evaluated top-down with memoized bounds.
// query_*(v, T) returns the exact value when it is <= T and otherwise a
// proven lower bound > T.

struct Bound {
  Complexity value;
  bool exact;
};

struct WideHash {
  std::size_t operator()(u128 v) const {
    return absl::Hash<std::pair<u64, u64>>()({static_cast<u64>(v), static_cast<u64>(v >> 64)});
  }
};

using Memo = absl::flat_hash_map<u128, Bound, WideHash>;

class FastRun : public SingleTargetRun {
 public:
  FastRun(u128 n, const Limits& limits, const SingleTargetOptions& options)
      : limits_(limits), plan_(WindowPlan::make(n, limits, options.mode)), factor_(options.shared ? options.shared->sieve() : nullptr) {
    n_ = n;
    u64 size = std::min<u64>(plan_.n0, options.max_prefix);
    size = std::max<u64>(size, kMinFastPrefix);
    if (size > kMaxPrefix) throw Error("fast mode prefix too large");
    prefix_.emplace_back(size, options.shared);
    pf_ = prefix_.front().values();
    limit_ = prefix_.front().size();
    stats_.prefix = limit_;
    value_ = f(n);
  }

  Complexity f(u128 v) override {
    if (v == 0) throw Error("f(0) is undefined");
    unsigned t = lower_bound(v);
    for (;;) {
      const unsigned r = query_f(v, t);
      if (r <= t) return static_cast<Complexity>(r);
      if (r > kMaxFinite) throw Error("complexity of " + describe(v) + " exceeds 254");
      t = r;
    }
  }

  Complexity fprime(u128 v) override {
    if (v == 0) throw Error("f'(0) is undefined");
    unsigned t = lower_bound(v);
    for (;;) {
      const unsigned r = query_fp(v, t);
      if (r <= t || r == kInfinity) return static_cast<Complexity>(r);
      t = r;
    }
  }

 private:
  unsigned query_f(u128 v, unsigned t) {
    if (v <= limit_) return pf_[static_cast<u64>(v)];
    unsigned lb = lower_bound(v);
    if (const auto it = memo_f_.find(v); it != memo_f_.end()) {
      if (it->second.exact) return it->second.value;
      lb = std::max<unsigned>(lb, it->second.value);
    }
    if (lb > t) return lb;
    ++stats_.fast_f_nodes;

    unsigned best = kInfinity;
    const unsigned product = query_fp(v, t);
    if (product <= t) best = product;
    const u64 cap = plan_.conv_length(plan_.mode == WindowMode::global ? n_ : v);
    for (u64 b = 1; b <= cap && 2 * u128{b} <= v; ++b) {
      const unsigned budget = std::min(t, best - 1);
      if (!log3_product_within(b, v - b, budget)) break;
      const unsigned lb_rest = lower_bound(v - b);
      if (lower_bound(b) + lb_rest > budget) continue;
      const unsigned fb = b <= limit_ ? pf_[b] : query_f(b, budget - lb_rest);
      if (fb + lb_rest > budget) continue;
      const unsigned rest = query_fp(v - b, budget - fb);
      if (rest != kInfinity && fb + rest <= budget) best = fb + rest;
    }
    return store(memo_f_, v, best, t);
  }

  unsigned query_fp(u128 u, unsigned t) {
    if (u <= limit_) return table_fprime(pf_, static_cast<u64>(u), factor_);
    unsigned lb = lower_bound(u);
    if (const auto it = memo_fp_.find(u); it != memo_fp_.end()) {
      if (it->second.exact) return it->second.value;
      lb = std::max<unsigned>(lb, it->second.value);
    }
    if (lb > t) return lb;
    ++stats_.fast_fprime_nodes;

    struct Pair {
      unsigned key;
      u128 j;
      unsigned lbq;
    };
    std::vector<Pair> pairs;
    for (u128 j : small_divisors(u, factor_)) {
      const unsigned lbj = j <= limit_ ? pf_[static_cast<u64>(j)] : lower_bound(j);
      const unsigned lbq = lower_bound(u / j);
      pairs.push_back({lbj + lbq, j, lbq});
    }
    if (pairs.empty()) {
      memo_fp_[u] = {kInfinity, true};
      return kInfinity;
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.key < b.key; });

    unsigned best = kInfinity;
    for (const Pair& p : pairs) {
      const unsigned budget = std::min(t, best - 1);
      if (p.key > budget) break;
      const unsigned fj = p.j <= limit_ ? pf_[static_cast<u64>(p.j)] : query_f(p.j, budget - p.lbq);
      if (fj + p.lbq > budget) continue;
      const unsigned fq = query_f(u / p.j, budget - fj);
      if (fj + fq <= budget) best = fj + fq;
    }
    return store(memo_fp_, u, best, t);
  }

  unsigned store(Memo& memo, u128 v, unsigned best, unsigned t) {
    if (best <= t) {
      if (best > kMaxFinite) throw Error("complexity value exceeds 254");
      memo[v] = {static_cast<Complexity>(best), true};
      return best;
    }
    const unsigned lb = std::min<unsigned>(t + 1, kMaxFinite);
    auto& entry = memo[v];
    if (!entry.exact && entry.value < lb) entry = {static_cast<Complexity>(lb), false};
    return t + 1;
  }

  Limits limits_;
  WindowPlan plan_;
  Factorizer factor_;
  std::vector<Prefix> prefix_;
  const Complexity* pf_ = nullptr;
  u64 limit_ = 0;
  Memo memo_f_;
  Memo memo_fp_;
};

}  // namespace

std::string_view mode_name(WindowMode mode) { return mode == WindowMode::global ? "global-L" : "per-window"; }

WindowMode parse_mode(std::string_view name) {
  if (name == "per-window") return WindowMode::per_window;
  if (name == "global-L") return WindowMode::global;
  throw Error("unknown mode: " + std::string(name));
}

WindowPlan WindowPlan::make(u128 n, const Limits& limits, WindowMode mode) {
  if (n < 2) throw Error("single target needs n >= 2");
  if (n > kMaxTarget) throw Error("single target supports n <= 2^127");
  WindowPlan plan;
  plan.n = n;
  plan.mode = mode;
  plan.ell = limits.ell();
  plan.t = mode == WindowMode::global ? limits.t_global() : limits.t();
  const long double nr = to_real(n);
  u64 n0 = ceil_u64(std::pow(nr, static_cast<long double>(plan.t)));
  n0 = std::max(n0, ceil_u64(4.0L * std::pow(nr, static_cast<long double>(plan.ell))) + kPad);
  n0 = std::max<u64>(n0, static_cast<u64>(isqrt(n)) + 2);
  n0 = std::max<u64>(n0, 100);
  if (n0 >= n) n0 = static_cast<u64>(n);
  plan.n0 = n0;
  plan.d_max = static_cast<u64>(n / n0);
  if (n0 == n) plan.d_max = 0;
  return plan;
}

u64 WindowPlan::window_length(u128 r) const {
  const long double base = to_real(mode == WindowMode::global ? n : r);
  return ceil_u64(4.0L * std::pow(base, static_cast<long double>(ell))) + kPad;
}

u64 WindowPlan::conv_length(u128 r) const {
  const long double base = to_real(mode == WindowMode::global ? n : r);
  return ceil_u64(std::pow(base, static_cast<long double>(ell))) + kPad;
}

SharedContext::SharedContext(u64 table_limit, u64 sieve_limit)
    : table_(compute_table(table_limit, Limits(), Engine::pruned)) {
  if (sieve_limit > 0) sieve_ = std::make_unique<SpfSieve>(sieve_limit);
}

std::unique_ptr<SingleTargetRun> solve_single(u128 n, const Limits& limits, const SingleTargetOptions& options) {
  if (options.fast) return std::make_unique<FastRun>(n, limits, options);
  return std::make_unique<WindowRun>(n, limits, options);
}

Complexity compute_single(u128 n, const Limits& limits, const SingleTargetOptions& options) {
  return solve_single(n, limits, options)->value();
}

}  // namespace intcx
