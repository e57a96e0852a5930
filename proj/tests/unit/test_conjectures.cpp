#include "doctest.h"

#include <sstream>

#include "intcx/conjectures.hpp"

using namespace intcx;

namespace {

// Strips factors 2, 3 and 5; returns the exponents when nothing else remains.
bool smooth235(u64 v, unsigned& i, unsigned& j, unsigned& k) {
  i = j = k = 0;
  while (v % 2 == 0) v /= 2, ++i;
  while (v % 3 == 0) v /= 3, ++j;
  while (v % 5 == 0) v /= 5, ++k;
  return v == 1;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("pow235") == Family::pow235);
  CHECK(family_name(Family::pow2plus1) == "pow2plus1");
  CHECK_THROWS_AS(parse_family("pow3"), Error);
}

TEST_CASE("family members match a direct scan") {
  const u64 limit = 200000;
  std::vector<u64> pow2, pow235, pow2plus1;
  for (u64 v = 2; v <= limit; ++v) {
    unsigned i, j, k;
    if (smooth235(v, i, j, k)) {
      if (k <= 5) pow235.push_back(v);
      if (j == 0 && k == 0) pow2.push_back(v);
    }
    if (smooth235(v - 1, i, j, k) && j == 0 && k == 0 && i >= 1 && i != 3 && i != 9) pow2plus1.push_back(v);
  }
  const auto values = [](const std::vector<FamilyMember>& ms) {
    std::vector<u64> out;
    for (const auto& m : ms) out.push_back(static_cast<u64>(m.value));
    return out;
  };
  CHECK(values(family_members(Family::pow2, limit)) == pow2);
  CHECK(values(family_members(Family::pow235, limit)) == pow235);
  CHECK(values(family_members(Family::pow2plus1, limit)) == pow2plus1);
  for (const auto& m : family_members(Family::pow235, limit)) {
    unsigned i, j, k;
    smooth235(static_cast<u64>(m.value), i, j, k);
    CHECK(m.expected == 2 * i + 3 * j + 5 * k);
  }
  CHECK(family_members(Family::pow2, kMaxTarget).size() == 127);
  CHECK(family_members(Family::pow2, 1).empty());
  CHECK_THROWS_AS(family_members(Family::pow2, kMaxTarget + 1), Error);
}

TEST_CASE("small families hold") {
  CHECK(check_family(Family::pow2, u128{1} << 30).empty());
  CHECK(check_family(Family::pow235, 100000).empty());
  CHECK(check_family(Family::pow2plus1, (u128{1} << 16) + 1).empty());
}

TEST_CASE("the unskipped exceptions are violations") {
  const auto table = compute_table(513);
  CHECK(table[9] == 6);
  CHECK(table[513] == 18);
}

TEST_CASE("family results do not depend on thread count") {
  SingleTargetOptions o;
  o.fast = true;
  const auto one = check_family(Family::pow235, 1000000, 1, o);
  const auto many = check_family(Family::pow235, 1000000, 4, o);
  CHECK(one.size() == many.size());
  std::ostringstream a, b;
  write_violations_csv(one, a);
  write_violations_csv(many, b);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "member,value_f,expected,status\n");
}

TEST_CASE("powers of three never collapse") {
  const auto report = check_collapse(3, 10);
  CHECK(report.status == CollapseReport::Status::no_collapse);
  CHECK(report.exponent == 10);
  CHECK_FALSE(report.truncated);
  REQUIRE(report.rows.size() == 10);
  for (const auto& row : report.rows) CHECK(row.f_power == 3 * row.exponent);
}

TEST_CASE("collapse agrees with a table scan") {
  const u64 limit = 1000000;
  auto table = compute_table(limit);
  unsigned tested = 0;
  for (u64 base = 2; base * base <= limit && tested < 5; ++base) {
    unsigned least = 0;
    u64 p = base;
    for (unsigned i = 2; p <= limit / base; ++i) {
      p *= base;
      if (table[p] < i * table[base]) {
        least = i;
        break;
      }
    }
    if (least == 0) continue;
    ++tested;
    const auto report = check_collapse(base, least + 1);
    CHECK(report.status == CollapseReport::Status::collapsed);
    CHECK(report.exponent == least);
    CHECK(report.product_bound == least * table[base]);
    CHECK(report.f_power < report.product_bound);
  }
  CHECK(tested > 0);
}

TEST_CASE("collapse csv and truncation") {
  u128 base = 1;
  for (int i = 0; i < 41; ++i) base *= 3;
  const auto report = check_collapse(base, 3);
  CHECK(report.truncated);
  CHECK(report.exponent == 1);
  std::ostringstream out;
  write_collapse_csv(report, out);
  CHECK(out.str() == "member,value_f,expected,status\n" + to_string(base) + ",123,123,equal\n,,,truncated\n");
  CHECK_THROWS_AS(check_collapse(1, 3), Error);
}
