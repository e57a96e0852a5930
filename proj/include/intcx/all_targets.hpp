#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intcx/core.hpp"
#include "intcx/types.hpp"

namespace intcx {

/// brute, capped and packed run the divide-and-conquer recursion with different
/// merge convolutions; pruned is a blocked direct recurrence with lower-bound
/// cutoffs, used for large prefixes and oracles.
enum class Engine { brute, capped, packed, pruned };

std::string_view engine_name(Engine engine);
Engine parse_engine(std::string_view name);

/// How an entry attains its value: n = operand * (n / operand), or n = operand + (n - operand).
struct Choice {
  enum class Kind : std::uint8_t { none, one, mul, add };
  Kind kind = Kind::none;
  u64 operand = 0;
};

class ComplexityTable {
 public:
  ComplexityTable() = default;
  /// `values` is indexed 0..n; index 0 is ignored.
  ComplexityTable(u64 n, Engine engine, std::vector<Complexity> values);

  u64 size() const { return n_; }
  Engine engine() const { return engine_; }
  /// f(k) for 1 <= k <= size(); throws Error out of range.
  Complexity at(u64 k) const;
  Complexity operator[](u64 k) const { return values_[k]; }
  /// Raw storage, index 0..size().
  std::span<const Complexity> raw() const { return values_; }

  /// Stores the deterministic witness choice of every entry: the smallest
  /// multiplicative factor attaining f(k), otherwise the smallest addend.
  void record_choices();
  bool has_choices() const { return !choices_.empty(); }
  const Choice& choice(u64 k) const;

  friend bool operator==(const ComplexityTable& a, const ComplexityTable& b) { return a.values_ == b.values_; }

 private:
  u64 n_ = 0;
  Engine engine_ = Engine::capped;
  std::vector<Complexity> values_;
  std::vector<Choice> choices_;
};

/// Instrumentation hooks for the divide-and-conquer engines.
struct ComputeObserver {
  /// Merge at node [l, r] with midpoint m: f[l..m] is convolved against
  /// f[1..prefix] and the results are applied to indices m+1..r.
  std::function<void(u64 l, u64 m, u64 r, u64 prefix)> on_merge;
  /// Every write to the table, with old and new value.
  std::function<void(u64 index, Complexity before, Complexity after)> on_update;
};

ComplexityTable compute_table(u64 n, const Limits& limits = Limits(), Engine engine = Engine::capped,
                              const ComputeObserver* observer = nullptr);

inline constexpr u64 kNaiveOracleCap = 100000;

/// Direct quadratic evaluation of the recurrence. n <= kNaiveOracleCap.
ComplexityTable naive_oracle(u64 n);

/// ICT1 format: "ICT1", version byte 1, 8-byte little-endian N, N value bytes.
void write_table(const ComplexityTable& table, std::ostream& out);
ComplexityTable read_table(std::istream& in);
void write_table_file(const ComplexityTable& table, const std::string& path);
ComplexityTable read_table_file(const std::string& path);

}  // namespace intcx
