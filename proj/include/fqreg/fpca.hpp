#pragma once
// Sample mean, covariance and principal components of a functional sample.

#include <cstddef>
#include <span>
#include <vector>

#include "fqreg/grid.hpp"
#include "fqreg/linalg.hpp"

namespace fqreg {

/// N curves on one grid (stored as an N×m row-major matrix) paired with N
/// scalar responses.
class FunctionalDataset {
 public:
  FunctionalDataset(Grid grid, Matrix curves, std::vector<double> responses);
  FunctionalDataset(const std::vector<Curve>& curves, std::vector<double> responses);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return curves_.rows(); }
  std::size_t grid_size() const noexcept { return curves_.cols(); }
  const Matrix& curve_values() const noexcept { return curves_; }
  std::span<const double> values(std::size_t n) const noexcept { return curves_.row(n); }
  Curve curve(std::size_t n) const;
  std::span<const double> responses() const noexcept { return responses_; }

 private:
  Grid grid_;
  Matrix curves_;
  std::vector<double> responses_;
};

/// Leading principal components in L² normalization: ⟨v_i, v_j⟩ = δ_ij under
/// the grid's trapezoid rule.
struct FpcaBasis {
  Curve mean;
  std::vector<double> eigenvalues;
  std::vector<Curve> eigenfunctions;
  /// Every eigenvalue of the weighted covariance operator, descending. Kept so
  /// variance-explained ratios can be reported for the retained components.
  std::vector<double> spectrum;

  std::size_t p() const noexcept { return eigenfunctions.size(); }

  /// Fraction of total variance carried by the first `count` components.
  double variance_explained(std::size_t count) const;

  /// Keeps the first `count` components; throws ComponentDegenerate when the
  /// count exceeds what the sample identifies.
  FpcaBasis truncate(std::size_t count, std::size_t sample_size) const;
};

Curve sample_mean(const FunctionalDataset& data);

/// Ĉ(t_i, t_j) with divisor N.
SymMatrix sample_covariance(const FunctionalDataset& data);

/// All m components, unchecked (some may be numerically zero).
FpcaBasis compute_fpca_full(const FunctionalDataset& data);

/// The first p components. Requires p <= m, p <= N-1 and λ_p > 1e-10·λ_1.
FpcaBasis compute_fpca(const FunctionalDataset& data, std::size_t p);

/// Smallest p whose cumulative share of Σλ reaches `threshold` ∈ (0, 1].
std::size_t choose_p_by_variance(std::span<const double> eigenvalues, double threshold);

}  // namespace fqreg
