#pragma once

// Inner loops of the exact elimination routines. Every kernel has a scalar
// reference implementation; vectorized variants must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace arbor::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

// Largest modulus accepted by axpy_mod: products of two residues plus a
// residue stay below 2^53, so double arithmetic is exact.
inline constexpr std::uint64_t kMaxDoubleModulus = (std::uint64_t{1} << 26) - 5;

struct Kernels {
  Isa isa;
  // dst[i] ^= src[i]
  void (*xor_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // dst[i] = (dst[i] + factor * src[i]) mod modulus, with all operands being
  // integers in [0, modulus) stored as doubles.
  void (*axpy_mod)(double* dst, const double* src, double factor, double modulus,
                   std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the build or the running CPU lacks AVX2+FMA.
const Kernels* avx2_kernels();

// The variant used by the library. Defaults to the best supported ISA; the
// ARBOR_SIMD environment variable ("scalar" or "avx2") overrides it.
const Kernels& active_kernels();
// Test hook; returns false when the requested ISA is unavailable.
bool force_isa(Isa isa);

}  // namespace arbor::simd
