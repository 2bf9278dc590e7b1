#include "fqreg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqreg/error.hpp"
#include "fqreg/kernels.hpp"

namespace fqreg {

namespace {

void check_abscissae(std::span<const double> x, const char* what) {
  if (x.size() < 4) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " needs at least 4 points, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " has a non-finite point at index " + std::to_string(i));
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " is not strictly increasing at index " + std::to_string(i));
    }
  }
}

std::vector<double> trapezoid_weights(std::span<const double> t) {
  std::vector<double> w(t.size(), 0.0);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double half = 0.5 * (t[i + 1] - t[i]);
    w[i] += half;
    w[i + 1] += half;
  }
  return w;
}

}  // namespace

Grid::Grid(std::vector<double> points) {
  check_abscissae(points, "grid");
  weights_ = std::make_shared<const std::vector<double>>(trapezoid_weights(points));
  points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

bool Grid::same_as(const Grid& other) const noexcept {
  return points_ == other.points_ || *points_ == *other.points_;
}

Grid make_uniform_grid(std::size_t m) {
  if (m < 4) {
    throw Error(ErrorKind::InvalidArgument,
                "uniform grid needs m >= 4, got " + std::to_string(m));
  }
  std::vector<double> t(m);
  const double denom = static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) t[i] = static_cast<double>(i) / denom;
  return Grid(std::move(t));
}

Curve::Curve(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "curve has " + std::to_string(values_.size()) + " values on a grid of " +
                    std::to_string(grid_.size()) + " points");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::InvalidArgument,
                  "curve has a non-finite value at index " + std::to_string(i));
    }
  }
}

double inner_product(const Curve& f, const Curve& g) {
  if (!f.grid().same_as(g.grid())) {
    throw Error(ErrorKind::GridMismatch, "inner product of curves on different grids");
  }
  const auto w = f.grid().weights();
  return kernels::active().dot3(w.data(), f.values().data(), g.values().data(), w.size());
}

double integral(const Curve& f) {
  return kernels::dot(f.grid().weights(), f.values());
}

SplineResampler::SplineResampler(std::span<const double> x, const Grid& target)
    : x_(x.begin(), x.end()), target_(target) {
  check_abscissae(x, "spline knots");
  const double lo = x_.front();
  const double hi = x_.back();
  interval_.resize(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double t = target[k];
    if (t < lo || t > hi) {
      throw Error(ErrorKind::OutOfRange, "spline target " + std::to_string(t) +
                                             " outside knot range [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - x_.begin());
    idx = idx == 0 ? 0 : idx - 1;
    interval_[k] = std::min(idx, x_.size() - 2);
  }

  // Interior rows i = 1..n-2 of the natural-spline system, Thomas-factored.
  const std::size_t n = x_.size();
  const std::size_t interior = n - 2;
  lower_.assign(interior, 0.0);
  diag_.assign(interior, 0.0);
  upper_.assign(interior, 0.0);
  for (std::size_t r = 0; r < interior; ++r) {
    const std::size_t i = r + 1;
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    lower_[r] = h0;
    diag_[r] = 2.0 * (h0 + h1);
    upper_[r] = h1;
  }
  for (std::size_t r = 1; r < interior; ++r) {
    const double factor = lower_[r] / diag_[r - 1];
    lower_[r] = factor;
    diag_[r] -= factor * upper_[r - 1];
  }
}

Curve SplineResampler::operator()(std::span<const double> y) const {
  const std::size_t n = x_.size();
  if (y.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "spline has " + std::to_string(n) + " knots but " +
                                                std::to_string(y.size()) + " values");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y[i])) {
      throw Error(ErrorKind::InvalidArgument,
                  "spline value at index " + std::to_string(i) + " is not finite");
    }
  }
  const std::size_t interior = n - 2;
  std::vector<double> m2(n, 0.0);
  std::vector<double> rhs(interior);
  for (std::size_t r = 0; r < interior; ++r) {
    const std::size_t i = r + 1;
    rhs[r] = 6.0 * ((y[i + 1] - y[i]) / (x_[i + 1] - x_[i]) - (y[i] - y[i - 1]) / (x_[i] - x_[i - 1]));
  }
  for (std::size_t r = 1; r < interior; ++r) rhs[r] -= lower_[r] * rhs[r - 1];
  for (std::size_t r = interior; r-- > 0;) {
    const double next = r + 1 < interior ? m2[r + 2] : 0.0;
    m2[r + 1] = (rhs[r] - upper_[r] * next) / diag_[r];
  }

  std::vector<double> out(target_.size());
  for (std::size_t k = 0; k < target_.size(); ++k) {
    const std::size_t i = interval_[k];
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - target_[k]) / h;
    const double b = (target_[k] - x_[i]) / h;
    out[k] = a * y[i] + b * y[i + 1] +
             ((a * a * a - a) * m2[i] + (b * b * b - b) * m2[i + 1]) * (h * h) / 6.0;
  }
  return Curve(target_, std::move(out));
}

Curve natural_cubic_spline(std::span<const double> x, std::span<const double> y, const Grid& target) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::InvalidArgument, "spline knots and values differ in length");
  }
  return SplineResampler(x, target)(y);
}

}  // namespace fqreg
