#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "intcx/single_target.hpp"
#include "intcx/types.hpp"

namespace intcx {

struct PowerRow {
  unsigned exponent = 0;
  u128 power = 0;
  unsigned f_power = 0;
  /// exponent * f(base)
  unsigned product_bound = 0;
};

struct CollapseReport {
  enum class Status { collapsed, no_collapse };

  u128 base = 0;
  Status status = Status::no_collapse;
  /// Least collapsing exponent, or the last exponent evaluated.
  unsigned exponent = 0;
  unsigned f_power = 0;
  unsigned product_bound = 0;
  /// Stopped before i_max because base^i passed 2^127 or the budget ran out.
  bool truncated = false;
  std::vector<PowerRow> rows;
};

struct CollapseOptions {
  SingleTargetOptions single = fast_single_options();
  /// Wall-clock budget in seconds, checked between exponents; 0 = none.
  double budget_seconds = 0;

  static SingleTargetOptions fast_single_options() {
    SingleTargetOptions o;
    o.fast = true;
    return o;
  }
};

CollapseReport check_collapse(u128 base, unsigned i_max, const CollapseOptions& options = {});

/// member,value_f,expected,status with one row per evaluated exponent.
void write_collapse_csv(const CollapseReport& report, std::ostream& out);

enum class Family { pow2, pow235, pow2plus1 };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct FamilyMember {
  u128 value = 0;
  unsigned expected = 0;
};

/// Members not above limit in increasing order, with their conjectured complexity.
std::vector<FamilyMember> family_members(Family family, u128 limit);

struct Violation {
  u128 member = 0;
  unsigned value_f = 0;
  unsigned expected = 0;
};

/// Members whose complexity differs from the conjectured value, sorted by
/// member. threads <= 0 uses the OpenMP default.
std::vector<Violation> check_family(Family family, u128 limit, int threads = 0,
                                    const SingleTargetOptions& options = CollapseOptions::fast_single_options());

void write_violations_csv(const std::vector<Violation>& violations, std::ostream& out);

}  // namespace intcx
