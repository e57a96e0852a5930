#pragma once

#include <optional>

#include "intcx/types.hpp"

namespace intcx {

/// Constants shared by every engine. `ell` and `t` are derived from the
/// effective alpha on every call.
class Limits {
 public:
  static constexpr double kDefaultAlpha = 4.125;

  explicit Limits(double alpha = kDefaultAlpha, std::optional<double> alpha0 = std::nullopt);

  /// Effective constant: the override when present, otherwise alpha.
  double alpha() const { return alpha0_.value_or(alpha_); }
  double base_alpha() const { return alpha_; }
  std::optional<double> alpha0_override() const { return alpha0_; }

  double ell() const { return alpha() / 3.0 - 1.0; }
  double t() const { return 1.0 / (2.0 - ell()); }
  /// Prefix exponent for the global-L configuration of the single-target engine.
  double t_global() const { return alpha() / 6.0; }

  void set_alpha(double alpha);
  void set_alpha0(std::optional<double> alpha0);

 private:
  static void validate(double alpha);

  double alpha_;
  std::optional<double> alpha0_;
};

/// ceil(3 log_3 n), exact: the least k with n^3 <= 3^k.
Complexity lower_bound(u128 n);

/// floor(alpha log_3 n) for n >= 2, rounded so it never undershoots.
Complexity upper_bound(u128 n, const Limits& limits);

/// max(ceil(n^ell), 16): cap on the smaller addend of any optimal split of n.
u64 addendum_limit(u128 n, const Limits& limits);

/// n^ell as a real, for window sizing.
long double pow_ell(u128 n, double ell);

/// True when 3 log_3(x * y) <= budget, i.e. (x*y)^3 <= 3^budget, evaluated exactly.
/// A split into parts of sizes x and y can only cost <= budget when this holds.
bool log3_product_within(u128 x, u128 y, unsigned budget);

}  // namespace intcx
