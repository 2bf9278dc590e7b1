#pragma once
// Dense kernels the test needs: symmetric eigendecomposition (cyclic Jacobi),
// least squares through the normal equations, and the chi-square upper tail.

#include <cstddef>
#include <span>
#include <vector>

namespace fqreg {

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix stored as its packed lower triangle, so a(i,j) and a(j,i)
/// are the same storage cell.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), packed_(n * (n + 1) / 2, 0.0) {}

  /// Symmetrizes nothing: throws InvalidArgument unless `dense` is exactly symmetric.
  static SymMatrix from_dense(const Matrix& dense);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) noexcept { packed_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) noexcept { packed_[index(i, j)] += v; }

  Matrix to_dense() const;
  double frobenius_norm() const noexcept;
  double trace() const noexcept;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t n_ = 0;
  std::vector<double> packed_;
};

struct EigenDecomposition {
  /// Eigenvalues, descending.
  std::vector<double> values;
  /// Column k is the unit eigenvector for values[k].
  Matrix vectors;

  std::vector<double> vector(std::size_t k) const { return vectors.column(k); }
};

/// Cyclic Jacobi. Rotates until every off-diagonal magnitude is below
/// 1e-12·‖a‖_F.
EigenDecomposition sym_eig(const SymMatrix& a);

/// argmin ‖y − zβ‖₂ via the normal equations and a Cholesky factorization.
/// A pivot below 1e-12·max diag(zᵀz) raises SingularDesign naming the column.
std::vector<double> solve_least_squares(const Matrix& z, std::span<const double> y);

/// P(χ²(dof) > x) = Q(dof/2, x/2), the regularized upper incomplete gamma.
double chi2_upper_tail(double x, int dof);

}  // namespace fqreg
