#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "intcx/single_target.hpp"
#include "intcx/types.hpp"

namespace intcx {

enum class SampleMode { exact, sampled };

std::string_view sample_mode_name(SampleMode mode);

inline constexpr double kDefaultConfidence = 0.99999;
/// exact_avg builds a full table, so n is capped.
inline constexpr u64 kExactAvgCap = 100000000;

struct SampleStats {
  u128 n = 0;
  /// Number of f_log terms averaged: n - 1 in exact mode.
  u64 m = 0;
  double mean = 0;
  /// Unbiased sample variance in sampled mode; population variance in exact mode.
  double variance = 0;
  u64 seed = 0;
  SampleMode mode = SampleMode::exact;

  /// Normal-approximation half width; 0 in exact mode.
  double ci_halfwidth(double level = kDefaultConfidence) const;
};

/// f(i) / log3(i)
double f_log(u128 i, unsigned f);

/// Uniform draw from {2, ..., n} for sample index idx; a pure function of (seed, idx).
u128 sample_point(u128 n, u64 seed, u64 idx);

struct SampleOptions {
  /// Values up to its table size are looked up; larger ones go to the single-target engine.
  const SharedContext* shared = nullptr;
  SingleTargetOptions single = fast_single();
  /// <= 0 uses the OpenMP default.
  int threads = 0;

  static SingleTargetOptions fast_single() {
    SingleTargetOptions o;
    o.fast = true;
    return o;
  }
};

/// Automatic table size when no shared context is given.
inline constexpr u64 kAutoTableLimit = 10000000;

SampleStats estimate_avg(u128 n, u64 m, u64 seed, const SampleOptions& options = {});

SampleStats exact_avg(u64 n, const ComplexityTable* table = nullptr);

struct SampleRequest {
  u128 n = 0;
  /// 0 requests exact mode.
  u64 samples = 0;
};

/// CSV with header n,mean,ci_halfwidth,samples,mode,seed; reals with 6 decimals.
void emit_table(const std::vector<SampleRequest>& rows, u64 seed, std::ostream& out,
                const SampleOptions& options = {}, double level = kDefaultConfidence);

void write_stats_csv_header(std::ostream& out);
void write_stats_csv_row(const SampleStats& stats, std::ostream& out, double level = kDefaultConfidence);

}  // namespace intcx
