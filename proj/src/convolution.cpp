#include "intcx/convolution.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

#include "intcx/kernels.hpp"

namespace intcx {

namespace {

using u32 = std::uint32_t;

std::vector<u32> ntt_product(std::vector<u32> a, std::vector<u32> b) {
  const std::size_t result_size = a.size() + b.size() - 1;
  const std::size_t n = std::bit_ceil(result_size);
  if (n > (std::size_t{1} << kernels::kNttMaxLog)) {
    throw Error("convolution length " + std::to_string(result_size) + " exceeds the transform limit");
  }
  a.resize(n, 0);
  b.resize(n, 0);
  kernels::parallel::ntt(a, false);
  kernels::parallel::ntt(b, false);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<u32>(static_cast<u64>(a[i]) * b[i] % kernels::kNttModulus);
  }
  kernels::parallel::ntt(a, true);
  a.resize(result_size);
  return a;
}

unsigned finite_max(std::span<const Complexity> v) {
  unsigned best = 0;
  for (Complexity x : v) {
    if (x != kInfinity) best = std::max<unsigned>(best, x);
  }
  return best;
}

}  // namespace

BoundedSeq::BoundedSeq(std::vector<Complexity> entries) : entries_(std::move(entries)), bound_(finite_max(entries_)) {}

BoundedSeq::BoundedSeq(std::vector<Complexity> entries, unsigned bound) : entries_(std::move(entries)), bound_(bound) {
  if (bound_ > kMaxFinite) throw Error("BoundedSeq bound exceeds 254");
  if (finite_max(entries_) > bound_) throw Error("BoundedSeq entry exceeds its bound");
}

std::vector<std::uint64_t> poly_multiply(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.empty() || b.empty()) throw Error("poly_multiply of an empty array");
  const u64 max_a = *std::max_element(a.begin(), a.end());
  const u64 max_b = *std::max_element(b.begin(), b.end());
  const u128 terms = std::min(a.size(), b.size());
  // Any coefficient is at most terms * max_a * max_b; it must stay below the modulus.
  const bool exact = max_a < kernels::kNttModulus && max_b < kernels::kNttModulus &&
                     terms * max_a * max_b < kernels::kNttModulus;
  if (!exact) throw Error("poly_multiply: coefficients too large for an exact transform");
  std::vector<u32> wa(a.begin(), a.end());
  std::vector<u32> wb(b.begin(), b.end());
  const auto product = ntt_product(std::move(wa), std::move(wb));
  return {product.begin(), product.end()};
}

void minplus_brute(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out) {
  kernels::parallel::minplus(a, b, out);
}

void minplus_packed(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out) {
  if (a.empty() || b.empty()) throw Error("(min,+) convolution of an empty sequence");
  if (out.size() != a.size() + b.size() - 1) throw Error("(min,+) convolution: output size mismatch");
  const unsigned u = std::max(finite_max(a), finite_max(b));
  const u64 base = 2 * u64{u} + 1;
  if (static_cast<u128>(std::min(a.size(), b.size())) >= kernels::kNttModulus) {
    throw Error("(min,+) convolution too long for an exact transform");
  }
  auto indicator = [base](std::span<const Complexity> v) {
    std::vector<u32> poly(v.size() * base, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != kInfinity) poly[i * base + v[i]] = 1;
    }
    return poly;
  };
  const auto product = ntt_product(indicator(a), indicator(b));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = kInfinity;
    const std::size_t first = k * base;
    for (std::size_t s = 0; s <= 2 * u; ++s) {
      if (product[first + s] != 0) {
        assert((first + s) / base == k);
        if (s > kMaxFinite) throw Error("(min,+) convolution: finite value exceeds 254");
        out[k] = static_cast<Complexity>(s);
        break;
      }
    }
  }
}

void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out,
             std::size_t cutoff) {
  if (std::min(a.size(), b.size()) < cutoff) {
    minplus_brute(a, b, out);
  } else {
    minplus_packed(a, b, out);
  }
}

BoundedSeq minplus_brute(const BoundedSeq& a, const BoundedSeq& b) {
  if (a.size() == 0 || b.size() == 0) throw Error("(min,+) convolution of an empty sequence");
  std::vector<Complexity> out(a.size() + b.size() - 1);
  minplus_brute(a.entries(), b.entries(), out);
  return BoundedSeq(std::move(out));
}

BoundedSeq minplus_packed(const BoundedSeq& a, const BoundedSeq& b) {
  if (a.size() == 0 || b.size() == 0) throw Error("(min,+) convolution of an empty sequence");
  std::vector<Complexity> out(a.size() + b.size() - 1);
  minplus_packed(a.entries(), b.entries(), out);
  return BoundedSeq(std::move(out));
}

}  // namespace intcx
