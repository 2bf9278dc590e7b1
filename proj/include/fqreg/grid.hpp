#pragma once
// Functions sampled on a discrete abscissa, trapezoid quadrature, and
// natural cubic spline resampling.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fqreg {

/// Strictly increasing, finite abscissae (at least 4 points). Copies share
/// storage, so two curves built from the same Grid compare equal cheaply.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  std::size_t size() const noexcept { return points_->size(); }
  std::span<const double> points() const noexcept { return *points_; }
  double operator[](std::size_t i) const noexcept { return (*points_)[i]; }
  double front() const noexcept { return points_->front(); }
  double back() const noexcept { return points_->back(); }

  /// Composite trapezoid weights: ∫f ≈ Σ w[i]·f(t[i]).
  std::span<const double> weights() const noexcept { return *weights_; }

  bool same_as(const Grid& other) const noexcept;

 private:
  std::shared_ptr<const std::vector<double>> points_;
  std::shared_ptr<const std::vector<double>> weights_;
};

/// Uniform grid t_i = i/(m-1) on [0,1]; m >= 4.
Grid make_uniform_grid(std::size_t m);

class Curve {
 public:
  Curve(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Samples f at every grid point.
template <typename F>
Curve sample(const Grid& grid, F&& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return Curve(grid, std::move(v));
}

/// Trapezoid approximation of ∫ f(t) g(t) dt. Throws GridMismatch unless both
/// curves live on the same grid.
double inner_product(const Curve& f, const Curve& g);

/// Trapezoid approximation of ∫ f(t) dt.
double integral(const Curve& f);

/// Natural cubic spline through (x, y), evaluated at every point of `target`.
/// Target points must lie inside [x.front(), x.back()].
Curve natural_cubic_spline(std::span<const double> x, std::span<const double> y,
                           const Grid& target);

/// Reusable spline setup for many curves sharing the same knots and targets.
/// The interpolant is linear in y, so each target value is a fixed 4-term
/// combination of knot values and knot second derivatives.
class SplineResampler {
 public:
  SplineResampler(std::span<const double> x, const Grid& target);

  const Grid& target() const noexcept { return target_; }
  Curve operator()(std::span<const double> y) const;

 private:
  std::vector<double> x_;
  Grid target_;
  std::vector<std::size_t> interval_;
  // Tridiagonal system for interior second derivatives, pre-factored.
  std::vector<double> lower_, diag_, upper_;
};

}  // namespace fqreg
