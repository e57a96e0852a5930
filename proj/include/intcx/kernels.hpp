#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel` with the same
// signature and bit-identical output; tests compare the two and bench/ times them.

#include <cstdint>
#include <span>

#include "intcx/types.hpp"

namespace intcx::kernels {

/// Prime modulus 3 * 2^30 + 1 with primitive root 5; supports transforms up to 2^30.
inline constexpr std::uint32_t kNttModulus = 3221225473u;
inline constexpr std::uint32_t kNttRoot = 5u;
inline constexpr unsigned kNttMaxLog = 30;

namespace serial {

/// In-place number-theoretic transform; size must be a power of two.
void ntt(std::span<std::uint32_t> a, bool inverse);

/// c[k] = min_i a[i] + b[k-i] over finite pairs; out.size() == a.size() + b.size() - 1.
/// Infinite entries (255) absorb. Throws Error if a finite minimum exceeds 254.
void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out);

/// out[i] = min(out[i], f[p] + f[q]) for every factor pair p*q = base+i with
/// 2 <= p <= q and q < base. Reads `values` (indexed from 0) for both factors.
void multiplicative_sweep(std::span<Complexity> values, u64 base, u64 count);

}  // namespace serial

namespace parallel {

void ntt(std::span<std::uint32_t> a, bool inverse);
void minplus(std::span<const Complexity> a, std::span<const Complexity> b, std::span<Complexity> out);
void multiplicative_sweep(std::span<Complexity> values, u64 base, u64 count);

}  // namespace parallel

/// Number of worker threads the parallel kernels will use.
int max_threads();
void set_threads(int threads);

}  // namespace intcx::kernels
