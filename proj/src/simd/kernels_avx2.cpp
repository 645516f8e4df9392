// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "arbor/simd/kernels.hpp"

namespace arbor::simd {

namespace {

void xor_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 8 <= words; i += 8) {
    __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 4));
    __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 4));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a0, b0));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), _mm256_xor_si256(a1, b1));
  }
  for (; i + 4 <= words; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

// t = a*x + y is exact (< 2^53); the quotient estimate floor(t / p) may be off
// by one in either direction, which the two conditional corrections absorb.
inline double reduce_scalar(double t, double p, double pinv) {
  double q = std::floor(t * pinv);
  double r = std::fma(-q, p, t);
  if (r < 0) r += p;
  if (r >= p) r -= p;
  return r;
}

void axpy_mod_avx2(double* dst, const double* src, double factor, double modulus,
                   std::size_t n) {
  const double pinv = 1.0 / modulus;
  const __m256d a = _mm256_set1_pd(factor);
  const __m256d p = _mm256_set1_pd(modulus);
  const __m256d vpinv = _mm256_set1_pd(pinv);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d y = _mm256_loadu_pd(dst + i);
    __m256d x = _mm256_loadu_pd(src + i);
    __m256d t = _mm256_fmadd_pd(a, x, y);
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vpinv));
    __m256d r = _mm256_fnmadd_pd(q, p, t);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
    _mm256_storeu_pd(dst + i, r);
  }
  for (; i < n; ++i) dst[i] = reduce_scalar(std::fma(factor, src[i], dst[i]), modulus, pinv);
}

}  // namespace

const Kernels& avx2_kernels_impl() {
  static const Kernels k{Isa::kAvx2, &xor_into_avx2, &axpy_mod_avx2};
  return k;
}

}  // namespace arbor::simd
