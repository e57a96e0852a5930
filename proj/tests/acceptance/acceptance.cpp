// One line per acceptance criterion: PASS/FAIL, name, elapsed time, detail.
// Optional arguments select criteria by name substring.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "intcx/all_targets.hpp"
#include "intcx/conjectures.hpp"
#include "intcx/convolution.hpp"
#include "intcx/sampling.hpp"
#include "intcx/single_target.hpp"
#include "intcx/witness.hpp"

using namespace intcx;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

// Exact f(1..n) by forward dynamic programming, independent of the library:
// every split b + (k - b) with b <= k/2 is tried until the lower bound
// ceil(3 log3 b) + ceil(3 log3 k) - 2 rules the rest out, and every product
// k * m is pushed once k is final.
std::vector<std::uint8_t> dp_oracle(u64 n) {
  std::vector<std::uint8_t> lb(n + 1, 0), f(n + 1, 255);
  std::vector<u128> pow3(1, 1);
  unsigned t = 0;
  for (u64 x = 1; x <= n; ++x) {
    const u128 cube = u128{x} * x * x;
    while (pow3[t] < cube) {
      if (t + 1 >= pow3.size()) pow3.push_back(pow3.back() * 3);
      ++t;
    }
    lb[x] = static_cast<std::uint8_t>(t);
  }
  f[1] = 1;
  for (u64 k = 2; k <= n; ++k) {
    unsigned best = f[k];
    const unsigned rest_floor = lb[k] >= 2 ? lb[k] - 2 : 0;
    for (u64 b = 1; 2 * b <= k; ++b) {
      if (lb[b] + rest_floor >= best) break;
      best = std::min<unsigned>(best, f[b] + f[k - b]);
    }
    f[k] = static_cast<std::uint8_t>(best);
    for (u64 m = 2; m <= k && k * m <= n; ++m) {
      const unsigned c = best + f[m];
      if (c < f[k * m]) f[k * m] = static_cast<std::uint8_t>(c);
    }
  }
  return f;
}

BigInt big_pow(u64 base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

Outcome all_targets_oracle() {
  const u64 n = 5000;
  const auto oracle = dp_oracle(n);
  const auto naive = naive_oracle(n);
  for (u64 k = 1; k <= n; ++k)
    if (naive[k] != oracle[k]) return {false, "naive_oracle disagrees with the test oracle at " + std::to_string(k)};
  for (Engine e : {Engine::brute, Engine::capped, Engine::packed}) {
    const auto table = compute_table(n, Limits(), e);
    for (u64 k = 1; k <= n; ++k)
      if (table[k] != naive[k])
        return {false, std::string(engine_name(e)) + " differs from naive_oracle at " + std::to_string(k)};
  }
  return {true, "brute, capped, packed equal naive_oracle(5000)"};
}

Outcome single_target_oracle() {
  const u64 low = 100000, high = 100000000;
  const auto oracle = dp_oracle(high);
  const auto naive = naive_oracle(low);
  for (u64 k = 1; k <= low; ++k)
    if (naive[k] != oracle[k]) return {false, "naive_oracle disagrees with the test oracle at " + std::to_string(k)};

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<u64> pick(low, high);
  std::vector<u64> targets;
  for (u64 n = 2; n <= low; ++n) targets.push_back(n);
  for (int i = 0; i < 1000; ++i) targets.push_back(pick(rng));

  SharedContext shared(1000000, 0);
  u64 checked = 0;
  for (WindowMode mode : {WindowMode::per_window, WindowMode::global}) {
    for (bool fast : {false, true}) {
      SingleTargetOptions o;
      o.mode = mode;
      o.fast = fast;
      o.debug_asserts = true;
      o.shared = &shared;
      for (u64 n : targets) {
        const Complexity v = compute_single(n, Limits(), o);
        if (v != oracle[n])
          return {false, std::string(mode_name(mode)) + (fast ? " fast" : " reference") + ": f(" + std::to_string(n) +
                             ") = " + std::to_string(v) + ", oracle " + std::to_string(oracle[n])};
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " evaluations over 4 configurations"};
}

Outcome six() {
  for (bool fast : {false, true}) {
    SingleTargetOptions o;
    o.fast = fast;
    auto run = solve_single(6, Limits(), o);
    if (run->value() != 5) return {false, "f(6) = " + std::to_string(run->value())};
    const std::string text = render(reconstruct(*run, 6));
    const auto r = verify(text);
    if (r.value != 6 || r.ones != 5) return {false, "witness " + text + " does not evaluate to (6, 5)"};
  }
  return {true, "f(6) = 5 with witness (1+1)*(1+1+1)"};
}

Outcome collapse_379() {
  const auto report = check_collapse(379, 6);
  std::ostringstream detail;
  detail << "status " << (report.status == CollapseReport::Status::collapsed ? "collapsed" : "none") << " at "
         << report.exponent << ", f = " << report.f_power << ", bound " << report.product_bound;
  const bool ok = report.status == CollapseReport::Status::collapsed && report.exponent == 6 &&
                  report.f_power == 107 && report.product_bound == 108;
  return {ok, detail.str()};
}

Outcome witness_fixtures() {
  const struct {
    const char* file;
    u64 base;
    unsigned exp;
    u64 ones;
  } cases[] = {{"witness_733_6.txt", 733, 6, 119}, {"witness_379_6.txt", 379, 6, 107},
               {"witness_739_6.txt", 739, 6, 119}, {"witness_541_6.txt", 541, 6, 113},
               {"witness_577_12.txt", 577, 12, 227}, {"witness_811_9.txt", 811, 9, 179}};
  for (const auto& c : cases) {
    std::ifstream in(std::string(INTCX_FIXTURE_DIR) + "/" + c.file);
    if (!in) return {false, std::string("missing fixture ") + c.file};
    std::stringstream text;
    text << in.rdbuf();
    const auto r = verify(text.str());
    if (r.value != big_pow(c.base, c.exp) || r.ones != c.ones)
      return {false, std::string(c.file) + " evaluates to (" + r.value.str() + ", " + std::to_string(r.ones) + ")"};
  }
  return {true, "6 expressions match their (value, ones)"};
}

Outcome families() {
  const struct {
    Family family;
    u128 limit;
  } cases[] = {{Family::pow2, u128{1} << 40}, {Family::pow235, 1000000}, {Family::pow2plus1, (u128{1} << 20) + 1}};
  std::string detail;
  for (const auto& c : cases) {
    const auto members = family_members(c.family, c.limit);
    const auto violations = check_family(c.family, c.limit);
    detail += std::string(family_name(c.family)) + ": " + std::to_string(members.size()) + " members, " +
              std::to_string(violations.size()) + " violations; ";
    if (!violations.empty() || members.empty()) return {false, detail};
  }
  return {true, detail};
}

Outcome table2() {
  const struct {
    u64 n;
    double expected;
  } rows[] = {{1000, 3.393001}, {10000, 3.400376}, {100000, 3.395626}, {1000000, 3.388161}};
  const auto table = compute_table(1000000, Limits(), Engine::pruned);
  std::string detail;
  bool ok = true;
  for (const auto& r : rows) {
    const double mean = exact_avg(r.n, &table).mean;
    const double diff = std::abs(mean - r.expected);
    detail += std::to_string(r.n) + ": " + fmt("%.6f", mean) + " (diff " + fmt("%.6f", diff) + "); ";
    ok = ok && diff <= 0.005;
  }
  return {ok, detail};
}

Outcome bounds() {
  const u64 n = 1000000;
  const auto table = compute_table(n);
  std::vector<BigInt> pow3(256), pow3_8(256);
  pow3[0] = 1;
  for (int i = 1; i < 256; ++i) pow3[i] = pow3[i - 1] * 3;
  for (int i = 0; i < 256; ++i) pow3_8[i] = pow3[i] * pow3[i] * pow3[i] * pow3[i] * pow3[i] * pow3[i] * pow3[i] * pow3[i];
  for (u64 k = 2; k <= n; ++k) {
    const unsigned f = table[k];
    // 3 log3 k <= f  <=>  k^3 <= 3^f ;  f <= 4.125 log3 k  <=>  3^(8f) <= k^33
    const BigInt cube = BigInt(k) * k * k;
    if (cube > pow3[f]) return {false, "lower bound fails at " + std::to_string(k)};
    BigInt p33 = 1, base = k;
    for (unsigned e = 33; e > 0; e >>= 1) {
      if (e & 1) p33 *= base;
      base *= base;
    }
    if (pow3_8[f] > p33) return {false, "upper bound fails at " + std::to_string(k)};
  }
  return {true, "3 log3 n <= f(n) <= 4.125 log3 n for 2 <= n <= 10^6"};
}

Outcome convolution_equivalence() {
  std::mt19937_64 rng(77);
  for (int c = 0; c < 10000; ++c) {
    const std::size_t la = 1 + rng() % 2048, lb = 1 + rng() % 2048;
    const unsigned u = rng() % 61;
    const unsigned inf_rate = rng() % 4;  // 0: none, otherwise 1 in 4^k entries infinite
    auto draw = [&](std::size_t len) {
      std::vector<Complexity> v(len);
      for (auto& x : v) x = (inf_rate != 0 && rng() % (u64{1} << (2 * inf_rate)) == 0) ? kInfinity : rng() % (u + 1);
      return v;
    };
    const auto a = draw(la), b = draw(lb);
    const BoundedSeq sa(a, u), sb(b, u);
    const auto packed = minplus_packed(sa, sb);
    const auto brute = minplus_brute(sa, sb);
    if (!(packed == brute)) return {false, "packed differs from brute in case " + std::to_string(c)};
    if (c % 100 == 0) {
      std::vector<unsigned> naive(la + lb - 1, 1000);
      for (std::size_t i = 0; i < la; ++i)
        for (std::size_t j = 0; j < lb; ++j)
          if (a[i] != kInfinity && b[j] != kInfinity) naive[i + j] = std::min<unsigned>(naive[i + j], a[i] + b[j]);
      for (std::size_t k = 0; k < naive.size(); ++k)
        if ((naive[k] == 1000 ? kInfinity : naive[k]) != brute[k])
          return {false, "brute differs from the direct loop in case " + std::to_string(c)};
    }
  }
  return {true, "10000 random cases agree"};
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

Outcome scaling() {
  std::string detail = "capped table ratios:";
  bool ok = true;
  double previous = 0;
  for (u64 n : {100000ull, 200000ull, 400000ull, 800000ull}) {
    const double t = best_of(3, [&] { compute_table(n, Limits(), Engine::capped); });
    if (previous > 0) {
      const double ratio = t / previous;
      detail += " " + fmt("%.2f", ratio);
      ok = ok && ratio <= 2.6;
    }
    previous = t;
  }
  std::vector<double> xs, ys;
  for (u64 n : {100000000ull, 1000000000ull, 10000000000ull}) {
    const double t = best_of(3, [&] { compute_single(n); });
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(t));
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  detail += "; single-target exponent " + fmt("%.3f", slope);
  ok = ok && slope <= 0.8;
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"all-targets oracle equivalence", 60, all_targets_oracle},
      {"single-target oracle equivalence", 1800, single_target_oracle},
      {"f(6) = 5 with witness", 1, six},
      {"collapse of 379 at exponent 6", 4 * 3600, collapse_379},
      {"appendix witness fixtures", 1, witness_fixtures},
      {"conjecture families", 2 * 3600, families},
      {"average complexity desk rows", 600, table2},
      {"bounds invariant up to 10^6", 600, bounds},
      {"packed and brute (min,+) equivalence", 300, convolution_equivalence},
      {"scaling sanity", 1800, scaling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (argc > 1) {
      bool selected = false;
      for (int i = 1; i < argc; ++i) selected = selected || c.name.find(argv[i]) != std::string::npos;
      if (!selected) continue;
    }
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    if (outcome.pass && elapsed > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " (over the " + fmt("%.0f", c.budget_seconds) + " s budget)";
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  %s  [%.2f s]  %s\n", outcome.pass ? "PASS" : "FAIL", c.name.c_str(), elapsed,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
