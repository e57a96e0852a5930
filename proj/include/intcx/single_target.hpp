#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "intcx/all_targets.hpp"
#include "intcx/core.hpp"
#include "intcx/factorization.hpp"
#include "intcx/types.hpp"

namespace intcx {

/// per_window sizes every window from its own right endpoint; global uses
/// L(n) for every window and the prefix exponent alpha/6.
enum class WindowMode { per_window, global };

std::string_view mode_name(WindowMode mode);
/// Accepts "per-window" and "global-L".
WindowMode parse_mode(std::string_view name);

inline constexpr u64 kPad = 8;

/// How the window engine finds factor pairs: by walking multiples of each
/// small factor across the window, or by factoring every entry.
enum class DivisorStrategy { multiples, factorize };

struct WindowPlan {
  u128 n = 0;
  WindowMode mode = WindowMode::per_window;
  double ell = 0;
  double t = 0;
  u64 n0 = 0;
  u64 d_max = 0;

  static WindowPlan make(u128 n, const Limits& limits, WindowMode mode);

  /// W = ceil(4 L) + PAD, with L = r^ell (per window) or n^ell (global).
  u64 window_length(u128 r) const;
  /// Lconv = ceil(L) + PAD.
  u64 conv_length(u128 r) const;
};

/// Exact tables shared by many single-target runs: f(1..N) and an optional
/// smallest-prime-factor sieve. Immutable after construction.
class SharedContext {
 public:
  SharedContext(u64 table_limit, u64 sieve_limit);

  const ComplexityTable& table() const { return table_; }
  const SpfSieve* sieve() const { return sieve_.get(); }

 private:
  ComplexityTable table_;
  std::unique_ptr<SpfSieve> sieve_;
};

struct SingleTargetOptions {
  WindowMode mode = WindowMode::per_window;
  /// Memoized branch and bound over the same recursion instead of materialized windows.
  bool fast = false;
  /// Window engine only.
  DivisorStrategy divisors = DivisorStrategy::multiples;
  /// Fast mode only: upper limit on the precomputed prefix.
  u64 max_prefix = u64{1} << 24;
  /// Recheck every window entry against the bounds and every cross-window
  /// lookup against the containment inequality.
  bool debug_asserts = false;
  const SharedContext* shared = nullptr;
};

struct SingleTargetStats {
  u64 prefix = 0;
  u64 windows = 0;
  u64 window_entries = 0;
  u64 lookups = 0;
  /// Windows that had to start lower than the W formula to serve their callers.
  u64 extended_windows = 0;
  /// Lookups where 4 (n/d)^ell / j + 1 <= 3 (n/dj)^ell + PAD fails.
  u64 containment_slack_failures = 0;
  u64 fast_f_nodes = 0;
  u64 fast_fprime_nodes = 0;
};

/// The state of a finished computation; answers f and f' for the values the
/// run touched, which is what witness reconstruction needs.
class SingleTargetRun {
 public:
  virtual ~SingleTargetRun() = default;

  u128 target() const { return n_; }
  Complexity value() const { return value_; }
  const SingleTargetStats& stats() const { return stats_; }

  /// Exact f(v). Throws Error when v is not covered by this run.
  virtual Complexity f(u128 v) = 0;
  /// Exact multiplication-last complexity f'(v); kInfinity when v > 1 is prime.
  virtual Complexity fprime(u128 v) = 0;

 protected:
  u128 n_ = 0;
  Complexity value_ = kInfinity;
  SingleTargetStats stats_;
};

std::unique_ptr<SingleTargetRun> solve_single(u128 n, const Limits& limits = Limits(),
                                              const SingleTargetOptions& options = {});

Complexity compute_single(u128 n, const Limits& limits = Limits(), const SingleTargetOptions& options = {});

}  // namespace intcx
