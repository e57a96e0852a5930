#include "intcx/conjectures.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>

#include <omp.h>

namespace intcx {

CollapseReport check_collapse(u128 base, unsigned i_max, const CollapseOptions& options) {
  if (base < 2) throw Error("collapse base must be at least 2");
  if (i_max < 1) throw Error("collapse needs a maximum exponent of at least 1");
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  CollapseReport report;
  report.base = base;
  const unsigned f_base = compute_single(base, Limits(), options.single);
  u128 power = base;
  unsigned previous = 0;
  for (unsigned i = 1; i <= i_max; ++i) {
    if (i > 1) {
      if (power > kMaxTarget / base) {
        report.truncated = true;
        break;
      }
      if (options.budget_seconds > 0 && elapsed() > options.budget_seconds) {
        report.truncated = true;
        break;
      }
      power *= base;
    }
    const unsigned fp = i == 1 ? f_base : compute_single(power, Limits(), options.single);
    if (i > 1 && fp > previous + f_base)
      throw InvariantViolation("f(" + to_string(power) + ") exceeds the product construction");
    previous = fp;
    report.rows.push_back({i, power, fp, i * f_base});
    report.exponent = i;
    report.f_power = fp;
    report.product_bound = i * f_base;
    if (fp < i * f_base) {
      report.status = CollapseReport::Status::collapsed;
      break;
    }
  }
  return report;
}

void write_collapse_csv(const CollapseReport& report, std::ostream& out) {
  out << "member,value_f,expected,status\n";
  for (const auto& row : report.rows) {
    out << to_string(row.power) << ',' << row.f_power << ',' << row.product_bound << ','
        << (row.f_power < row.product_bound ? "collapsed" : "equal") << '\n';
  }
  if (report.truncated) out << ",,,truncated\n";
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::pow2:
      return "pow2";
    case Family::pow235:
      return "pow235";
    case Family::pow2plus1:
      return "pow2plus1";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::pow2, Family::pow235, Family::pow2plus1})
    if (family_name(f) == name) return f;
  throw Error("unknown family: " + std::string(name));
}

std::vector<FamilyMember> family_members(Family family, u128 limit) {
  if (limit > kMaxTarget) throw Error("family limit above 2^127");
  std::vector<FamilyMember> out;
  switch (family) {
    case Family::pow2:
      for (unsigned i = 1; i <= 127 && (u128{1} << i) <= limit; ++i) out.push_back({u128{1} << i, 2 * i});
      break;
    case Family::pow235: {
      u128 p5 = 1;
      for (unsigned k = 0; k <= 5 && p5 <= limit; ++k, p5 *= 5) {
        u128 p3 = p5;
        for (unsigned j = 0; p3 <= limit; ++j) {
          u128 v = p3;
          for (unsigned i = 0; v <= limit; ++i) {
            if (i + j + k > 0) out.push_back({v, 2 * i + 3 * j + 5 * k});
            if (v > limit / 2) break;
            v *= 2;
          }
          if (p3 > limit / 3) break;
          p3 *= 3;
        }
        if (p5 > limit / 5) break;
      }
      break;
    }
    case Family::pow2plus1:
      for (unsigned i = 1; i <= 126 && (u128{1} << i) + 1 <= limit; ++i)
        if (i != 3 && i != 9) out.push_back({(u128{1} << i) + 1, 2 * i + 1});
      break;
  }
  std::sort(out.begin(), out.end(), [](const FamilyMember& a, const FamilyMember& b) { return a.value < b.value; });
  return out;
}

std::vector<Violation> check_family(Family family, u128 limit, int threads, const SingleTargetOptions& options) {
  const auto members = family_members(family, limit);
  std::vector<Complexity> values(members.size(), kInfinity);
  const long count = static_cast<long>(members.size());
  if (threads <= 0) threads = omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long idx = 0; idx < count; ++idx) {
    try {
      values[idx] = compute_single(members[idx].value, Limits(), options);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Violation> out;
  for (std::size_t idx = 0; idx < members.size(); ++idx)
    if (values[idx] != members[idx].expected) out.push_back({members[idx].value, values[idx], members[idx].expected});
  return out;
}

void write_violations_csv(const std::vector<Violation>& violations, std::ostream& out) {
  out << "member,value_f,expected,status\n";
  for (const auto& v : violations) out << to_string(v.member) << ',' << v.value_f << ',' << v.expected << ",violation\n";
}

}  // namespace intcx
