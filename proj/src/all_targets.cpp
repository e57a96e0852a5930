#include "intcx/all_targets.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "intcx/convolution.hpp"
#include "intcx/factorization.hpp"
#include "intcx/kernels.hpp"

namespace intcx {

namespace {

constexpr char kMagic[4] = {'I', 'C', 'T', '1'};
constexpr std::uint8_t kVersion = 1;

// Divisors 1 < j <= sqrt(k) of every k, from lists when they fit, else a sieve.
class DivisorSource {
 public:
  explicit DivisorSource(u64 n) {
    if (divisor_summatory(n) <= DivisorLists::kDefaultEntryBudget) {
      lists_.emplace_back(n);
    } else {
      sieve_.emplace_back(n);
    }
  }

  template <typename Fn>
  void small_factors(u64 k, Fn&& fn) const {
    if (!lists_.empty()) {
      for (std::uint32_t j : lists_.front().of(k)) {
        if (u64{j} * j > k) break;
        if (j > 1) fn(u64{j});
      }
      return;
    }
    for (u64 j : divisors_of(k, sieve_.front())) {
      if (j * j > k) break;
      if (j > 1) fn(j);
    }
  }

 private:
  std::vector<DivisorLists> lists_;
  std::vector<SpfSieve> sieve_;
};

class DivideAndConquer {
 public:
  DivideAndConquer(std::vector<Complexity>& f, const Limits& limits, Engine engine, const ComputeObserver* observer)
      : f_(f), limits_(limits), engine_(engine), observer_(observer), divisors_(f.size() - 1) {}

  void run(u64 l, u64 r) {
    if (l == r) {
      leaf(l);
      return;
    }
    const u64 m = (l + r) / 2;
    run(l, m);
    merge(l, m, r);
    run(m + 1, r);
  }

 private:
  void set(u64 k, unsigned value) {
    if (value >= f_[k]) return;
    if (value > kMaxFinite) throw Error("complexity value exceeds 254");
    if (observer_ && observer_->on_update) observer_->on_update(k, f_[k], static_cast<Complexity>(value));
    f_[k] = static_cast<Complexity>(value);
  }

  void leaf(u64 k) {
    divisors_.small_factors(k, [&](u64 j) { set(k, unsigned{f_[j]} + f_[k / j]); });
  }

  void merge(u64 l, u64 m, u64 r) {
    u64 prefix = std::min(r - l, m);
    if (engine_ == Engine::capped) prefix = std::min(prefix, addendum_limit(r, limits_));
    if (observer_ && observer_->on_merge) observer_->on_merge(l, m, r, prefix);
    const std::span<const Complexity> window(f_.data() + l, m - l + 1);
    const std::span<const Complexity> addends(f_.data() + 1, prefix);
    conv_.resize(window.size() + addends.size() - 1);
    switch (engine_) {
      case Engine::brute:
        minplus_brute(window, addends, conv_);
        break;
      case Engine::packed:
        minplus_packed(window, addends, conv_);
        break;
      default:
        minplus(window, addends, conv_);
        break;
    }
    // conv_[s] is the best f(x) + f(y) with x = l + s', y = 1 + (s - s'), i.e. index l + 1 + s.
    for (u64 k = m + 1; k <= r; ++k) {
      const u64 s = k - l - 1;
      if (s < conv_.size()) set(k, conv_[s]);
    }
  }

  std::vector<Complexity>& f_;
  const Limits& limits_;
  Engine engine_;
  const ComputeObserver* observer_;
  DivisorSource divisors_;
  std::vector<Complexity> conv_;
};

// Blocked direct evaluation. Each block [base, base + count) with count <= base
// first takes all products from earlier values, then sums in increasing order.
void run_pruned(std::vector<Complexity>& f, const ComputeObserver* observer) {
  const u64 n = f.size() - 1;
  auto set = [&](u64 k, unsigned value) {
    if (value >= f[k]) return;
    if (observer && observer->on_update) observer->on_update(k, f[k], static_cast<Complexity>(value));
    f[k] = static_cast<Complexity>(value);
  };
  for (u64 base = 2; base <= n;) {
    const u64 count = std::min(base, n + 1 - base);
    if (observer && observer->on_update) {
      std::vector<Complexity> before(f.begin() + base, f.begin() + base + count);
      kernels::parallel::multiplicative_sweep(f, base, count);
      for (u64 i = 0; i < count; ++i) {
        if (f[base + i] != before[i]) observer->on_update(base + i, before[i], f[base + i]);
      }
    } else {
      kernels::parallel::multiplicative_sweep(f, base, count);
    }
    for (u64 k = base; k < base + count; ++k) {
      set(k, unsigned{f[k - 1]} + 1);
      unsigned best = f[k];
      if (best > kMaxFinite) throw Error("complexity value exceeds 254");
      for (u64 b = 2; 2 * b <= k && log3_product_within(b, k - b, best - 1); ++b) {
        const unsigned sum = unsigned{f[b]} + f[k - b];
        if (sum < best) best = sum;
      }
      set(k, best);
    }
    base += count;
  }
}

}  // namespace

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::brute:
      return "brute";
    case Engine::capped:
      return "capped";
    case Engine::packed:
      return "packed";
    case Engine::pruned:
      return "pruned";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::brute, Engine::capped, Engine::packed, Engine::pruned}) {
    if (engine_name(e) == name) return e;
  }
  throw Error("unknown engine: " + std::string(name));
}

ComplexityTable::ComplexityTable(u64 n, Engine engine, std::vector<Complexity> values)
    : n_(n), engine_(engine), values_(std::move(values)) {
  if (values_.size() != n + 1) throw Error("table storage must hold indices 0..N");
}

Complexity ComplexityTable::at(u64 k) const {
  if (k == 0 || k > n_) throw Error("table index " + std::to_string(k) + " out of range 1.." + std::to_string(n_));
  return values_[k];
}

const Choice& ComplexityTable::choice(u64 k) const {
  if (choices_.empty()) throw Error("table has no recorded choices; call record_choices() first");
  if (k == 0 || k > n_) throw Error("choice index out of range");
  return choices_[k];
}

void ComplexityTable::record_choices() {
  choices_.assign(n_ + 1, Choice{});
  if (n_ >= 1) choices_[1] = {Choice::Kind::one, 1};
  for (u64 k = 2; k <= n_; ++k) {
    const unsigned target = values_[k];
    Choice c;
    for (u64 j = 2; j * j <= k; ++j) {
      if (k % j == 0 && unsigned{values_[j]} + values_[k / j] == target) {
        c = {Choice::Kind::mul, j};
        break;
      }
    }
    for (u64 b = 1; c.kind == Choice::Kind::none && 2 * b <= k; ++b) {
      if (unsigned{values_[b]} + values_[k - b] == target) c = {Choice::Kind::add, b};
    }
    if (c.kind == Choice::Kind::none) throw InvariantViolation("no split attains f(" + std::to_string(k) + ")");
    choices_[k] = c;
  }
}

ComplexityTable compute_table(u64 n, const Limits& limits, Engine engine, const ComputeObserver* observer) {
  if (n == 0) throw Error("compute_table: N must be positive");
  if (n > (u64{1} << 40)) throw Error("compute_table: N too large for a dense table");
  std::vector<Complexity> f(n + 1, kInfinity);
  f[1] = 1;
  if (n >= 2) {
    if (engine == Engine::pruned) {
      run_pruned(f, observer);
    } else {
      DivideAndConquer(f, limits, engine, observer).run(1, n);
    }
  }
  for (u64 k = 1; k <= n; ++k) {
    if (f[k] == kInfinity) throw InvariantViolation("entry " + std::to_string(k) + " left unset");
  }
  return ComplexityTable(n, engine, std::move(f));
}

ComplexityTable naive_oracle(u64 n) {
  if (n == 0) throw Error("naive_oracle: N must be positive");
  if (n > kNaiveOracleCap) throw Error("naive_oracle is limited to N <= " + std::to_string(kNaiveOracleCap));
  std::vector<Complexity> f(n + 1, kInfinity);
  f[1] = 1;
  for (u64 k = 2; k <= n; ++k) {
    unsigned best = 1000;
    for (u64 i = 1; 2 * i <= k; ++i) best = std::min(best, unsigned{f[i]} + f[k - i]);
    for (u64 m = 2; m * m <= k; ++m) {
      if (k % m == 0) best = std::min(best, unsigned{f[m]} + f[k / m]);
    }
    f[k] = static_cast<Complexity>(best);
  }
  return ComplexityTable(n, Engine::brute, std::move(f));
}

void write_table(const ComplexityTable& table, std::ostream& out) {
  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  u64 n = table.size();
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xFF));
  const auto raw = table.raw();
  out.write(reinterpret_cast<const char*>(raw.data() + 1), static_cast<std::streamsize>(n));
  if (!out) throw Error("failed to write table");
}

ComplexityTable read_table(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw Error("not an ICT1 table");
  const int version = in.get();
  if (version != kVersion) throw Error("unsupported table version");
  u64 n = 0;
  for (int i = 0; i < 8; ++i) {
    const int byte = in.get();
    if (byte < 0) throw Error("truncated table header");
    n |= static_cast<u64>(byte) << (8 * i);
  }
  if (n == 0 || n > (u64{1} << 40)) throw Error("table size out of range");
  std::vector<Complexity> values(n + 1, kInfinity);
  if (!in.read(reinterpret_cast<char*>(values.data() + 1), static_cast<std::streamsize>(n))) {
    throw Error("truncated table body");
  }
  return ComplexityTable(n, Engine::capped, std::move(values));
}

void write_table_file(const ComplexityTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_table(table, out);
}

ComplexityTable read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_table(in);
}

}  // namespace intcx
