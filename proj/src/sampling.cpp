#include "intcx/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <memory>

#include <boost/math/distributions/normal.hpp>
#include <omp.h>

namespace intcx {

namespace {

u64 splitmix(u64& state) {
  u64 z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr u64 kBlock = 4096;

struct Partial {
  long double sum = 0;
  long double sum_sq = 0;
};

}  // namespace

std::string_view sample_mode_name(SampleMode mode) { return mode == SampleMode::exact ? "exact" : "sampled"; }

double SampleStats::ci_halfwidth(double level) const {
  if (mode == SampleMode::exact || m < 2) return 0;
  if (!(level > 0 && level < 1)) throw Error("confidence level must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 1 - (1 - level) / 2);
  return z * std::sqrt(variance / static_cast<double>(m));
}

double f_log(u128 i, unsigned f) {
  return static_cast<double>(static_cast<long double>(f) * std::log(3.0L) / std::log(static_cast<long double>(i)));
}

u128 sample_point(u128 n, u64 seed, u64 idx) {
  if (n < 2) throw Error("sampling needs n >= 2");
  u64 mixer = idx;
  u64 state = seed ^ splitmix(mixer);
  const u128 range = n - 1;
  if (range <= ~u64{0}) {
    const u64 r = static_cast<u64>(range);
    const u64 reject_from = ~u64{0} - (~u64{0} % r + 1) % r;
    for (;;) {
      const u64 x = splitmix(state);
      if (x <= reject_from) return 2 + x % r;
    }
  }
  const u128 all = ~u128{0};
  const u128 reject_from = all - (all % range + 1) % range;
  for (;;) {
    const u128 x = (u128{splitmix(state)} << 64) | splitmix(state);
    if (x <= reject_from) return 2 + x % range;
  }
}

SampleStats estimate_avg(u128 n, u64 m, u64 seed, const SampleOptions& options) {
  if (n < 3) throw Error("estimate_avg needs n >= 3");
  if (m < 2) throw Error("estimate_avg needs at least 2 samples");
  if (n > kMaxTarget) throw Error("estimate_avg supports n <= 2^127");

  std::unique_ptr<SharedContext> own;
  const SharedContext* shared = options.shared;
  if (shared == nullptr) {
    const u64 limit = n <= kAutoTableLimit ? static_cast<u64>(n) : std::max(kAutoTableLimit, options.single.max_prefix);
    own = std::make_unique<SharedContext>(limit, 0);
    shared = own.get();
  }
  SingleTargetOptions single = options.single;
  single.shared = shared;
  const ComplexityTable& table = shared->table();

  const u64 blocks = (m + kBlock - 1) / kBlock;
  std::vector<Partial> partial(blocks);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    try {
      Partial p;
      const u64 end = std::min(m, (static_cast<u64>(b) + 1) * kBlock);
      for (u64 idx = static_cast<u64>(b) * kBlock; idx < end; ++idx) {
        const u128 i = sample_point(n, seed, idx);
        const unsigned f = i <= table.size() ? unsigned{table[static_cast<u64>(i)]} : compute_single(i, Limits(), single);
        const long double x = f_log(i, f);
        p.sum += x;
        p.sum_sq += x * x;
      }
      partial[b] = p;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Partial total;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  SampleStats s;
  s.n = n;
  s.m = m;
  s.seed = seed;
  s.mode = SampleMode::sampled;
  const long double mean = total.sum / m;
  s.mean = static_cast<double>(mean);
  s.variance = static_cast<double>(std::max(0.0L, (total.sum_sq - total.sum * mean) / (m - 1)));
  return s;
}

SampleStats exact_avg(u64 n, const ComplexityTable* table) {
  if (n < 2) throw Error("exact_avg needs n >= 2");
  if (n > kExactAvgCap) throw Error("exact_avg supports n <= 10^8");
  ComplexityTable own;
  if (table == nullptr || table->size() < n) {
    own = compute_table(n, Limits(), Engine::pruned);
    table = &own;
  }
  long double sum = 0;
  for (u64 i = 2; i <= n; ++i) sum += f_log(i, (*table)[i]);
  const long double mean = sum / (n - 1);
  long double sq = 0;
  for (u64 i = 2; i <= n; ++i) {
    const long double d = f_log(i, (*table)[i]) - mean;
    sq += d * d;
  }
  SampleStats s;
  s.n = n;
  s.m = n - 1;
  s.mean = static_cast<double>(mean);
  s.variance = static_cast<double>(sq / (n - 1));
  s.mode = SampleMode::exact;
  return s;
}

void write_stats_csv_header(std::ostream& out) { out << "n,mean,ci_halfwidth,samples,mode,seed\n"; }

void write_stats_csv_row(const SampleStats& stats, std::ostream& out, double level) {
  out << to_string(stats.n) << ',' << std::fixed << std::setprecision(6) << stats.mean << ','
      << stats.ci_halfwidth(level) << ',' << stats.m << ',' << sample_mode_name(stats.mode) << ',' << stats.seed
      << '\n';
}

void emit_table(const std::vector<SampleRequest>& rows, u64 seed, std::ostream& out, const SampleOptions& options,
                double level) {
  write_stats_csv_header(out);
  for (const auto& row : rows) {
    SampleStats s;
    if (row.samples == 0) {
      if (row.n > kExactAvgCap) throw Error("exact rows support n <= 10^8");
      const ComplexityTable* table = options.shared != nullptr ? &options.shared->table() : nullptr;
      s = exact_avg(static_cast<u64>(row.n), table);
      s.seed = seed;
    } else {
      s = estimate_avg(row.n, row.samples, seed, options);
    }
    write_stats_csv_row(s, out, level);
  }
  if (!out) throw Error("failed to write the sample table");
}

}  // namespace intcx
