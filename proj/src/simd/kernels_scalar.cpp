#include "fqreg/kernels.hpp"

namespace fqreg::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double dot3_scalar(const double* w, const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] * (a[i] * b[i]);
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += alpha * x[i];
}

void rotate_scalar(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

constexpr KernelSet kScalar{"scalar", dot_scalar, dot3_scalar, axpy_scalar, rotate_scalar};

}  // namespace

const KernelSet& scalar() noexcept { return kScalar; }

}  // namespace fqreg::kernels
