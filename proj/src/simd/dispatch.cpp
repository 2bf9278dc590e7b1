#include <cstdlib>
#include <string_view>

#include "fqreg/kernels.hpp"

namespace fqreg::kernels {

namespace detail {
#if defined(FQREG_HAVE_AVX2)
extern const KernelSet kAvx2;
#endif
#if defined(FQREG_HAVE_NEON)
extern const KernelSet kNeon;
#endif
}  // namespace detail

const KernelSet* avx2() noexcept {
#if defined(FQREG_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &detail::kAvx2;
#endif
  return nullptr;
}

const KernelSet* neon() noexcept {
#if defined(FQREG_HAVE_NEON)
  return &detail::kNeon;
#else
  return nullptr;
#endif
}

namespace {

const KernelSet& select() noexcept {
  const char* env = std::getenv("FQREG_SIMD");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return scalar();
  if (want == "avx2" || want.empty()) {
    if (const auto* k = avx2()) return *k;
  }
  if (want == "neon" || want.empty()) {
    if (const auto* k = neon()) return *k;
  }
  return scalar();
}

}  // namespace

const KernelSet& active() noexcept {
  static const KernelSet& chosen = select();
  return chosen;
}

}  // namespace fqreg::kernels
