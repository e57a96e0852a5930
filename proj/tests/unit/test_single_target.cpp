#include "doctest.h"

#include <random>

#include "intcx/single_target.hpp"

using namespace intcx;

namespace {

SingleTargetOptions options_for(WindowMode mode, bool fast, const SharedContext* shared = nullptr) {
  SingleTargetOptions o;
  o.mode = mode;
  o.fast = fast;
  o.shared = shared;
  return o;
}

const WindowMode kModes[] = {WindowMode::per_window, WindowMode::global};

}  // namespace

TEST_CASE("mode names") {
  CHECK(parse_mode("per-window") == WindowMode::per_window);
  CHECK(parse_mode("global-L") == WindowMode::global);
  CHECK(mode_name(WindowMode::global) == "global-L");
  CHECK_THROWS_AS(parse_mode("global"), Error);
}

TEST_CASE("small targets") {
  for (WindowMode mode : kModes) {
    for (bool fast : {false, true}) {
      CHECK(compute_single(6, Limits(), options_for(mode, fast)) == 5);
      CHECK(compute_single(1024, Limits(), options_for(mode, fast)) == 20);
      CHECK(compute_single(2, Limits(), options_for(mode, fast)) == 2);
    }
  }
  CHECK_THROWS_AS(compute_single(1), Error);
  CHECK_THROWS_AS(compute_single((u128{1} << 127) + 1, Limits(), options_for(WindowMode::per_window, true)), Error);
}

TEST_CASE("window engine is limited to 64-bit targets") {
  CHECK_THROWS_AS(compute_single(u128{1} << 64), Error);
}

TEST_CASE("plan sizes") {
  const Limits limits;
  for (u128 n : {u128{1000}, u128{1000000}, u128{123456789012ull}}) {
    for (WindowMode mode : kModes) {
      const auto plan = WindowPlan::make(n, limits, mode);
      CHECK(plan.n0 >= isqrt(n) + 1);
      CHECK(plan.n0 >= plan.window_length(n));
      CHECK(plan.conv_length(n) < plan.window_length(n));
      CHECK(plan.n0 <= n);
    }
  }
  CHECK(WindowPlan::make(50, limits, WindowMode::per_window).d_max == 0);
}

TEST_CASE("all configurations match the table up to 20000") {
  SharedContext shared(20000, 0);
  const auto& table = shared.table();
  for (WindowMode mode : kModes) {
    for (bool fast : {false, true}) {
      auto o = options_for(mode, fast, &shared);
      o.debug_asserts = true;
      for (u64 n = 2; n <= 20000; ++n) REQUIRE(compute_single(n, Limits(), o) == table[n]);
    }
  }
}

TEST_CASE("divisor strategies agree") {
  SharedContext shared(10000000, 0);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> pick(100000, 10000000);
  for (int i = 0; i < 40; ++i) {
    const u64 n = pick(rng);
    for (WindowMode mode : kModes) {
      auto a = options_for(mode, false, &shared);
      auto b = a;
      b.divisors = DivisorStrategy::factorize;
      const auto value = compute_single(n, Limits(), a);
      CHECK(compute_single(n, Limits(), b) == value);
      CHECK(value == shared.table()[n]);
    }
  }
}

TEST_CASE("lookups stay in guaranteed ranges and window counts are bounded") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> pick(1000, 10000000);
  for (int i = 0; i < 60; ++i) {
    const u64 n = pick(rng);
    for (WindowMode mode : kModes) {
      auto o = options_for(mode, false);
      o.debug_asserts = true;
      auto run = solve_single(n, Limits(), o);
      const auto plan = WindowPlan::make(n, Limits(), mode);
      CHECK(run->stats().windows <= 2 * isqrt(n) + 2);
      CHECK(run->stats().windows <= plan.d_max);
      CHECK(run->stats().prefix == plan.n0);
    }
  }
}

TEST_CASE("runs answer f and f' for touched values") {
  SharedContext shared(100000, 0);
  const auto& table = shared.table();
  for (bool fast : {false, true}) {
    auto run = solve_single(99991 * 7, Limits(), options_for(WindowMode::per_window, fast, &shared));
    CHECK(run->value() == compute_table(99991 * 7)[99991 * 7]);
    CHECK(run->f(12) == table[12]);
    CHECK(run->fprime(12) == 7);
    CHECK(run->fprime(13) == kInfinity);
    CHECK(run->fprime(1) == 1);
  }
}

TEST_CASE("fast mode reaches sixteen digits") {
  CHECK(compute_single(2963706958323721ull, Limits(), options_for(WindowMode::per_window, true)) == 107);
}
