#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "fqreg/kernels.hpp"
#include "oracles.hpp"

namespace fqreg::kernels {
namespace {

std::vector<const KernelSet*> simd_variants() {
  std::vector<const KernelSet*> out;
  if (const auto* k = avx2()) out.push_back(k);
  if (const auto* k = neon()) out.push_back(k);
  return out;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(Kernels, ActiveVariantIsKnown) {
  const auto name = active().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2" || name == "neon") << name;
}

TEST(Kernels, ScalarReferenceValues) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, -5, 6};
  const std::vector<double> w{0.5, 1, 2};
  EXPECT_EQ(scalar().dot(a.data(), b.data(), 3), 12.0);
  EXPECT_EQ(scalar().dot3(w.data(), a.data(), b.data(), 3), 2.0 - 10.0 + 36.0);
  std::vector<double> acc{1, 1, 1};
  scalar().axpy(2.0, a.data(), acc.data(), 3);
  EXPECT_EQ(acc, (std::vector<double>{3, 5, 7}));
  std::vector<double> x{1, 0};
  std::vector<double> y{0, 1};
  scalar().rotate(x.data(), y.data(), 0.0, 1.0, 2);
  EXPECT_EQ(x, (std::vector<double>{0, -1}));
  EXPECT_EQ(y, (std::vector<double>{1, 0}));
}

TEST(Kernels, SimdMatchesScalar) {
  const auto variants = simd_variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 gen(2024);
  const KernelSet& ref = scalar();
  for (const KernelSet* k : variants) {
    for (std::size_t n = 0; n < 70; ++n) {
      const auto a = testing::random_vector(gen, n, -3, 3);
      const auto b = testing::random_vector(gen, n, -3, 3);
      const auto w = testing::random_vector(gen, n, 0, 1);

      double magnitude = 0.0;
      double magnitude3 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        magnitude += std::abs(a[i] * b[i]);
        magnitude3 += std::abs(w[i] * a[i] * b[i]);
      }
      EXPECT_NEAR(k->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), 1e-14 * (1 + magnitude))
          << k->name << " n=" << n;
      EXPECT_NEAR(k->dot3(w.data(), a.data(), b.data(), n), ref.dot3(w.data(), a.data(), b.data(), n),
                  1e-14 * (1 + magnitude3))
          << k->name << " n=" << n;

      // Element-wise kernels must agree bit for bit.
      auto acc_ref = testing::random_vector(gen, n);
      auto acc_simd = acc_ref;
      ref.axpy(0.37, a.data(), acc_ref.data(), n);
      k->axpy(0.37, a.data(), acc_simd.data(), n);
      EXPECT_TRUE(bitwise_equal(acc_ref, acc_simd)) << k->name << " axpy n=" << n;

      auto x_ref = a, y_ref = b, x_simd = a, y_simd = b;
      ref.rotate(x_ref.data(), y_ref.data(), 0.8, 0.6, n);
      k->rotate(x_simd.data(), y_simd.data(), 0.8, 0.6, n);
      EXPECT_TRUE(bitwise_equal(x_ref, x_simd)) << k->name << " rotate n=" << n;
      EXPECT_TRUE(bitwise_equal(y_ref, y_simd)) << k->name << " rotate n=" << n;
    }
  }
}

}  // namespace
}  // namespace fqreg::kernels
