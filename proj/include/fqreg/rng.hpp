#pragma once
// Reproducible random streams. The engine is std::mt19937_64 (its output
// sequence is fixed by the standard); uniforms and normals are produced here
// rather than by <random> distributions, whose algorithms vary by library.

#include <cstdint>
#include <random>

namespace fqreg {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by the Marsaglia polar method.
  double normal();

  /// Student-t with `dof` degrees of freedom, as Z/√(V/dof), V a sum of dof squared normals.
  double student_t(int dof);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream for one Monte Carlo iteration. Depends only on
/// (seed, iteration), never on scheduling.
Rng derive_stream(std::uint64_t seed, std::uint64_t iteration);

}  // namespace fqreg
