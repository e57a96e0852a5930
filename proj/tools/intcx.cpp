#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "intcx/all_targets.hpp"
#include "intcx/conjectures.hpp"
#include "intcx/sampling.hpp"
#include "intcx/single_target.hpp"
#include "intcx/witness.hpp"

using namespace intcx;

namespace {

constexpr int kUsage = 1;
constexpr int kFailed = 2;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

u64 to_u64(u128 v, const char* what) {
  if (v > ~u64{0}) throw Error(std::string(what) + " must fit in 64 bits");
  return static_cast<u64>(v);
}

struct Global {
  double alpha = Limits::kDefaultAlpha;
  u64 seed = 1;
  int threads = 0;
  bool debug_asserts = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer complexity: the least number of 1s that write n with + and *."};
  app.require_subcommand(1);
  Global g;
  app.add_option("--alpha", g.alpha, "Upper-bound constant alpha")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for verify and sample (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--debug-asserts", g.debug_asserts, "Check window invariants while running");

  std::string n_text;
  std::string engine_text = "capped";
  std::string out_path;
  auto* table_cmd = app.add_subcommand("table", "Compute f(1..N) and write an ICT1 file");
  table_cmd->add_option("--n", n_text)->required();
  table_cmd->add_option("--engine", engine_text)->check(CLI::IsMember({"brute", "capped", "packed", "pruned"}))->capture_default_str();
  table_cmd->add_option("--out", out_path)->required();

  std::string mode_text = "per-window";
  bool witness = false;
  bool fast = false;
  auto* eval_cmd = app.add_subcommand("eval", "Compute f(N) for a single N");
  eval_cmd->add_option("--n", n_text)->required();
  eval_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"per-window", "global-L"}))->capture_default_str();
  eval_cmd->add_flag("--witness", witness, "Also print a minimal expression");
  eval_cmd->add_flag("--fast", fast, "Memoized branch and bound instead of materialized windows");

  auto* oracle_cmd = app.add_subcommand("oracle", "Naive dynamic program (small N only)");
  oracle_cmd->add_option("--n", n_text)->required();

  std::string base_text;
  unsigned max_exp = 0;
  double budget = 0;
  bool reference = false;
  auto* collapse_cmd = app.add_subcommand("collapse", "Least i with f(P^i) < i f(P)");
  collapse_cmd->add_option("--base", base_text)->required();
  collapse_cmd->add_option("--max-exp", max_exp)->required()->check(CLI::PositiveNumber);
  collapse_cmd->add_option("--budget", budget, "Seconds; checked between exponents")->check(CLI::NonNegativeNumber);
  collapse_cmd->add_flag("--reference", reference, "Use the window engine instead of fast mode");

  std::string family_text;
  std::string limit_text;
  auto* verify_cmd = app.add_subcommand("verify", "Check a conjectured family up to a limit");
  verify_cmd->add_option("--family", family_text)->required()->check(CLI::IsMember({"pow2", "pow235", "pow2plus1"}));
  verify_cmd->add_option("--limit", limit_text)->required();

  u64 samples = 0;
  bool exact = false;
  std::vector<std::string> sample_ns;
  auto* sample_cmd = app.add_subcommand("sample", "Average of f(i)/log3(i) over 2..N");
  sample_cmd->add_option("--n", sample_ns, "Range bound; repeat for several rows")->required();
  sample_cmd->add_option("--samples", samples);
  sample_cmd->add_flag("--exact", exact, "Average over every i instead of sampling");
  sample_cmd->add_option("--out", out_path, "CSV path (default: standard output)");

  std::string file_path;
  std::string expect_value;
  u64 expect_ones = 0;
  auto* check_cmd = app.add_subcommand("check-witness", "Parse an expression file and compare value and 1-count");
  check_cmd->add_option("--file", file_path)->required();
  check_cmd->add_option("--expect-value", expect_value)->required();
  check_cmd->add_option("--expect-ones", expect_ones)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    Limits limits(g.alpha);
    if (g.threads > 0) omp_set_num_threads(g.threads);
    Stopwatch clock;

    if (*table_cmd) {
      const u64 n = to_u64(parse_u128(n_text), "--n");
      const auto table = compute_table(n, limits, parse_engine(engine_text));
      write_table_file(table, out_path);
      std::cerr << "elapsed " << clock.seconds() << " s\n";
      return 0;
    }

    if (*eval_cmd) {
      const u128 n = parse_u128(n_text);
      SingleTargetOptions o;
      o.mode = parse_mode(mode_text);
      o.fast = fast;
      o.debug_asserts = g.debug_asserts;
      auto run = solve_single(n, limits, o);
      std::cout << "f(" << to_string(n) << ") = " << unsigned{run->value()} << '\n';
      if (witness) std::cout << render(reconstruct(*run, n)) << '\n';
      std::cerr << "elapsed " << clock.seconds() << " s\n";
      return 0;
    }

    if (*oracle_cmd) {
      const u64 n = to_u64(parse_u128(n_text), "--n");
      const auto table = naive_oracle(n);
      std::cout << "f(" << n << ") = " << unsigned{table[n]} << '\n';
      return 0;
    }

    if (*collapse_cmd) {
      CollapseOptions o;
      o.single.fast = !reference;
      o.single.debug_asserts = g.debug_asserts;
      o.budget_seconds = budget;
      const auto report = check_collapse(parse_u128(base_text), max_exp, o);
      write_collapse_csv(report, std::cout);
      std::cerr << "elapsed " << clock.seconds() << " s\n";
      return 0;
    }

    if (*verify_cmd) {
      SingleTargetOptions o;
      o.fast = true;
      o.debug_asserts = g.debug_asserts;
      const auto violations = check_family(parse_family(family_text), parse_u128(limit_text), g.threads, o);
      write_violations_csv(violations, std::cout);
      std::cerr << "elapsed " << clock.seconds() << " s\n";
      return violations.empty() ? 0 : kFailed;
    }

    if (*sample_cmd) {
      if (!exact && samples == 0) throw Error("sample needs --samples M or --exact");
      SampleOptions o;
      o.threads = g.threads;
      o.single.debug_asserts = g.debug_asserts;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw Error("cannot open " + out_path + " for writing");
      }
      std::ostream& out = out_path.empty() ? std::cout : file;
      std::vector<SampleRequest> rows;
      for (const auto& text : sample_ns) rows.push_back({parse_u128(text), exact ? 0 : samples});
      emit_table(rows, g.seed, out, o);
      std::cerr << "elapsed " << clock.seconds() << " s\n";
      return 0;
    }

    if (*check_cmd) {
      std::ifstream in(file_path);
      if (!in) throw Error("cannot open " + file_path);
      std::stringstream text;
      text << in.rdbuf();
      VerifyResult r;
      try {
        r = verify(text.str());
      } catch (const ParseError& e) {
        std::cerr << file_path << ": " << e.what() << '\n';
        return kFailed;
      }
      std::cout << "value = " << r.value << "\nones = " << r.ones << '\n';
      const bool ok = r.value == BigInt(expect_value) && r.ones == expect_ones;
      if (!ok) std::cerr << "mismatch: expected value " << expect_value << " and " << expect_ones << " ones\n";
      return ok ? 0 : kFailed;
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
