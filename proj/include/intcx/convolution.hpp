#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "intcx/types.hpp"

namespace intcx {

/// A sequence of complexity values (255 = infinity) with a bound on its finite entries.
class BoundedSeq {
 public:
  BoundedSeq() = default;
  /// Bound is taken as the largest finite entry (0 when all entries are infinite).
  explicit BoundedSeq(std::vector<Complexity> entries);
  /// Throws Error when an entry exceeds `bound` or bound > 254.
  BoundedSeq(std::vector<Complexity> entries, unsigned bound);

  const std::vector<Complexity>& entries() const { return entries_; }
  unsigned bound() const { return bound_; }
  std::size_t size() const { return entries_.size(); }
  Complexity operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const BoundedSeq&, const BoundedSeq&) = default;

 private:
  std::vector<Complexity> entries_;
  unsigned bound_ = 0;
};

/// Exact integer convolution through the number-theoretic transform. Throws
/// Error when the coefficient bound could reach the transform modulus.
std::vector<std::uint64_t> poly_multiply(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Schoolbook (min,+)-convolution; the oracle for every faster route.
BoundedSeq minplus_brute(const BoundedSeq& a, const BoundedSeq& b);

/// (min,+)-convolution by packing entries into exponents: base B = 2u+1,
/// indicator term at B*i + a[i], exact polynomial product, first nonzero
/// exponent per bucket.
BoundedSeq minplus_packed(const BoundedSeq& a, const BoundedSeq& b);

inline constexpr std::size_t kDefaultPackedCutoff = 256;

/// Span-level entry points used by the engines.
void minplus_brute(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out);
void minplus_packed(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out);

/// Brute below `cutoff` (shorter operand length), packed otherwise.
void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out,
             std::size_t cutoff = kDefaultPackedCutoff);

}  // namespace intcx
