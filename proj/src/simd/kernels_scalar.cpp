#include <cstdint>

#include "arbor/simd/kernels.hpp"

namespace arbor::simd {

namespace {

void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

void axpy_mod_scalar(double* dst, const double* src, double factor, double modulus,
                     std::size_t n) {
  const auto p = static_cast<std::uint64_t>(modulus);
  const auto a = static_cast<std::uint64_t>(factor);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::uint64_t>(dst[i]);
    const auto x = static_cast<std::uint64_t>(src[i]);
    dst[i] = static_cast<double>((y + a * x) % p);
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::kScalar, &xor_into_scalar, &axpy_mod_scalar};
  return k;
}

}  // namespace arbor::simd
