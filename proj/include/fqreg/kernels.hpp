#pragma once
// Data-parallel inner loops used by the estimators. Each kernel has a scalar
// reference implementation and optional SIMD variants; the active variant is
// picked once at startup from the CPU features (override with
// FQREG_SIMD=scalar|avx2|neon).

#include <cstddef>
#include <span>
#include <string_view>

namespace fqreg::kernels {

/// Function table for one instruction-set variant.
struct KernelSet {
  std::string_view name;

  /// Σ a[i]·b[i]. Reduction order is variant-specific.
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// Σ w[i]·a[i]·b[i] (a quadrature-weighted inner product).
  double (*dot3)(const double* w, const double* a, const double* b, std::size_t n);

  /// acc[i] += alpha·x[i]. Element-wise, so every variant is bit-identical.
  void (*axpy)(double alpha, const double* x, double* acc, std::size_t n);

  /// Plane rotation of two rows: x' = c·x − s·y, y' = s·x + c·y. Bit-identical
  /// across variants.
  void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

const KernelSet& scalar() noexcept;

/// AVX2 variant, or nullptr when not compiled in or not supported by this CPU.
const KernelSet* avx2() noexcept;

/// NEON variant, or nullptr when not compiled in.
const KernelSet* neon() noexcept;

/// The variant used by the library. Selected once and then fixed for the process.
const KernelSet& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace fqreg::kernels
