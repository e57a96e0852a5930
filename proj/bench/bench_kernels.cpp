#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "intcx/all_targets.hpp"
#include "intcx/kernels.hpp"

using namespace intcx;

namespace {

std::vector<Complexity> random_values(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(1, 100);
  std::vector<Complexity> v(n);
  for (auto& x : v) x = static_cast<Complexity>(d(rng));
  return v;
}

template <bool Parallel>
void BM_minplus(benchmark::State& state) {
  const auto a = random_values(state.range(0), 1);
  const auto b = random_values(state.range(1), 2);
  std::vector<Complexity> out(a.size() + b.size() - 1);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::minplus(a, b, out);
    else
      kernels::serial::minplus(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <bool Parallel>
void BM_ntt(benchmark::State& state) {
  std::vector<std::uint32_t> a(std::size_t{1} << state.range(0));
  std::mt19937 rng(3);
  for (auto& x : a) x = rng() % kernels::kNttModulus;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::ntt(a, false);
    else
      kernels::serial::ntt(a, false);
    benchmark::DoNotOptimize(a.data());
  }
}

template <bool Parallel>
void BM_multiplicative_sweep(benchmark::State& state) {
  const u64 base = state.range(0);
  const auto table = compute_table(2 * base, Limits(), Engine::pruned);
  std::vector<Complexity> values(table.raw().begin(), table.raw().end());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::multiplicative_sweep(values, base, base);
    else
      kernels::serial::multiplicative_sweep(values, base, base);
    benchmark::DoNotOptimize(values.data());
  }
}

void BM_compute_table(benchmark::State& state) {
  const auto engine = static_cast<Engine>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(state.range(0), Limits(), engine));
  state.SetLabel(std::string(engine_name(engine)));
}

}  // namespace

BENCHMARK(BM_minplus<false>)->Args({2048, 2048})->Args({65536, 512});
BENCHMARK(BM_minplus<true>)->Args({2048, 2048})->Args({65536, 512});
BENCHMARK(BM_ntt<false>)->Arg(16)->Arg(20);
BENCHMARK(BM_ntt<true>)->Arg(16)->Arg(20);
BENCHMARK(BM_multiplicative_sweep<false>)->Arg(1 << 18);
BENCHMARK(BM_multiplicative_sweep<true>)->Arg(1 << 18);
BENCHMARK(BM_compute_table)
    ->Args({100000, static_cast<int>(Engine::capped)})
    ->Args({100000, static_cast<int>(Engine::pruned)})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
