#include "fqreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fqreg/error.hpp"
#include "fqreg/kernels.hpp"

namespace fqreg {

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

SymMatrix SymMatrix::from_dense(const Matrix& dense) {
  if (dense.rows() != dense.cols()) {
    throw Error(ErrorKind::InvalidArgument, "symmetric matrix must be square");
  }
  SymMatrix out(dense.rows());
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (dense(i, j) != dense(j, i)) {
        throw Error(ErrorKind::InvalidArgument, "matrix is not symmetric at (" + std::to_string(i) +
                                                    ", " + std::to_string(j) + ")");
      }
      out.set(i, j, dense(i, j));
    }
  }
  return out;
}

Matrix SymMatrix::to_dense() const {
  Matrix out(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out(i, j) = (*this)(i, j);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

double SymMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) sum += 2.0 * (*this)(i, j) * (*this)(i, j);
    sum += (*this)(i, i) * (*this)(i, i);
  }
  return std::sqrt(sum);
}

double SymMatrix::trace() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += (*this)(i, i);
  return sum;
}

EigenDecomposition sym_eig(const SymMatrix& a) {
  const std::size_t n = a.size();
  Matrix w = a.to_dense();
  for (double v : w.data()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }

  // Rows of `basis` are the eigenvectors; rotations then act on contiguous rows.
  Matrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i) basis(i, i) = 1.0;

  const auto& k = kernels::active();
  const double tol = 1e-12 * a.frobenius_norm();
  constexpr int kMaxSweeps = 100;

  auto off_diagonal_max = [&] {
    double m = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(w(p, q)));
    }
    return m;
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_max() >= tol && tol > 0.0; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (std::abs(apq) < tol) continue;
        const double app = w(p, p);
        const double aqq = w(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        k.rotate(w.row(p).data(), w.row(q).data(), c, s, n);
        for (std::size_t r = 0; r < n; ++r) {
          w(r, p) = w(p, r);
          w(r, q) = w(q, r);
        }
        w(p, p) = app - t * apq;
        w(q, q) = aqq + t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;

        k.rotate(basis.row(p).data(), basis.row(q).data(), c, s, n);
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_max() >= tol) {
    throw Error(ErrorKind::NoConvergence, "Jacobi did not converge in " +
                                              std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i) > w(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = w(src, src);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = basis(src, r);
  }
  return out;
}

std::vector<double> solve_least_squares(const Matrix& z, std::span<const double> y) {
  const std::size_t n = z.rows();
  const std::size_t q = z.cols();
  if (y.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "design has " + std::to_string(n) +
                                                " rows but response has " + std::to_string(y.size()));
  }
  if (q == 0 || n < q) {
    throw Error(ErrorKind::SingularDesign, "need at least as many rows (" + std::to_string(n) +
                                               ") as columns (" + std::to_string(q) + ")");
  }

  const auto& k = kernels::active();
  Matrix gram(q, q);
  std::vector<double> zty(q, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = z.row(r);
    for (std::size_t i = 0; i < q; ++i) {
      k.axpy(row[i], row.data() + i, gram.row(i).data() + i, q - i);
    }
    k.axpy(y[r], row.data(), zty.data(), q);
  }

  double max_diag = 0.0;
  for (std::size_t i = 0; i < q; ++i) max_diag = std::max(max_diag, gram(i, i));
  const double floor = 1e-12 * max_diag;

  // Lower Cholesky factor in place; the upper triangle of `gram` holds the input.
  Matrix chol(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    double d = gram(j, j);
    for (std::size_t m = 0; m < j; ++m) d -= chol(j, m) * chol(j, m);
    if (!(d > floor)) {
      throw Error(ErrorKind::SingularDesign,
                  "design column " + std::to_string(j) + " is linearly dependent on earlier columns");
    }
    const double root = std::sqrt(d);
    chol(j, j) = root;
    for (std::size_t i = j + 1; i < q; ++i) {
      double v = gram(j, i);
      for (std::size_t m = 0; m < j; ++m) v -= chol(i, m) * chol(j, m);
      chol(i, j) = v / root;
    }
  }

  std::vector<double> beta(zty);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t m = 0; m < i; ++m) beta[i] -= chol(i, m) * beta[m];
    beta[i] /= chol(i, i);
  }
  for (std::size_t i = q; i-- > 0;) {
    for (std::size_t m = i + 1; m < q; ++m) beta[i] -= chol(m, i) * beta[m];
    beta[i] /= chol(i, i);
  }
  return beta;
}

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Regularized lower incomplete gamma by its power series; use for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < kMaxIter; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma by Lentz's continued fraction; use for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi2_upper_tail(double x, int dof) {
  if (dof < 1) throw Error(ErrorKind::InvalidArgument, "chi-square needs dof >= 1");
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "chi-square argument must be >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double a = 0.5 * dof;
  const double half = 0.5 * x;
  const double q = half < a + 1.0 ? 1.0 - gamma_p_series(a, half) : gamma_q_fraction(a, half);
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace fqreg
