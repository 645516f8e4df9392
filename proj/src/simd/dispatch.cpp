#include <atomic>
#include <cstdlib>
#include <string>

#include "arbor/simd/kernels.hpp"

namespace arbor::simd {

#ifdef ARBOR_HAVE_AVX2
const Kernels& avx2_kernels_impl();
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

const Kernels* avx2_kernels() {
#if defined(ARBOR_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Kernels* initial_choice() {
  if (const char* env = std::getenv("ARBOR_SIMD")) {
    if (std::string(env) == "scalar") return &scalar_kernels();
  }
  if (const Kernels* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*>& current() {
  static std::atomic<const Kernels*> k{initial_choice()};
  return k;
}

}  // namespace

const Kernels& active_kernels() { return *current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  const Kernels* k = isa == Isa::kAvx2 ? avx2_kernels() : &scalar_kernels();
  if (k == nullptr) return false;
  current().store(k, std::memory_order_relaxed);
  return true;
}

}  // namespace arbor::simd
