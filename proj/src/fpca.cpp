#include "fqreg/fpca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqreg/error.hpp"
#include "fqreg/kernels.hpp"

namespace fqreg {

FunctionalDataset::FunctionalDataset(Grid grid, Matrix curves, std::vector<double> responses)
    : grid_(std::move(grid)), curves_(std::move(curves)), responses_(std::move(responses)) {
  if (curves_.rows() < 2) {
    throw Error(ErrorKind::InsufficientSample, "a functional dataset needs at least 2 curves");
  }
  if (curves_.cols() != grid_.size()) {
    throw Error(ErrorKind::GridMismatch, "curve length " + std::to_string(curves_.cols()) +
                                             " does not match grid size " + std::to_string(grid_.size()));
  }
  if (responses_.size() != curves_.rows()) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(curves_.rows()) + " curves but " +
                                                std::to_string(responses_.size()) + " responses");
  }
  for (double v : curves_.data()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "curve values must be finite");
  }
  for (double v : responses_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "responses must be finite");
  }
}

namespace {

Matrix stack(const std::vector<Curve>& curves) {
  if (curves.empty()) return {};
  Matrix out(curves.size(), curves.front().size());
  for (std::size_t n = 0; n < curves.size(); ++n) {
    if (!curves[n].grid().same_as(curves.front().grid())) {
      throw Error(ErrorKind::GridMismatch, "curve " + std::to_string(n) + " is on a different grid");
    }
    std::ranges::copy(curves[n].values(), out.row(n).begin());
  }
  return out;
}

Grid grid_of(const std::vector<Curve>& curves) {
  if (curves.empty()) throw Error(ErrorKind::InsufficientSample, "no curves");
  return curves.front().grid();
}

}  // namespace

FunctionalDataset::FunctionalDataset(const std::vector<Curve>& curves, std::vector<double> responses)
    : FunctionalDataset(grid_of(curves), stack(curves), std::move(responses)) {}

Curve FunctionalDataset::curve(std::size_t n) const {
  const auto v = values(n);
  return Curve(grid_, std::vector<double>(v.begin(), v.end()));
}

double FpcaBasis::variance_explained(std::size_t count) const {
  double total = 0.0;
  double head = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double v = std::max(spectrum[i], 0.0);
    total += v;
    if (i < count) head += v;
  }
  return total > 0.0 ? head / total : 0.0;
}

FpcaBasis FpcaBasis::truncate(std::size_t count, std::size_t sample_size) const {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "need at least one component");
  if (count > eigenfunctions.size()) {
    throw Error(ErrorKind::ComponentDegenerate, "asked for " + std::to_string(count) +
                                                    " components on a grid of " +
                                                    std::to_string(eigenfunctions.size()) + " points");
  }
  if (count + 1 > sample_size) {
    throw Error(ErrorKind::ComponentDegenerate, "asked for " + std::to_string(count) +
                                                    " components from " + std::to_string(sample_size) +
                                                    " curves (at most N-1 are identifiable)");
  }
  if (!(eigenvalues[count - 1] > 1e-10 * eigenvalues[0])) {
    throw Error(ErrorKind::ComponentDegenerate,
                "eigenvalue " + std::to_string(count) + " is numerically zero relative to the first");
  }
  FpcaBasis out{mean, {}, {}, spectrum};
  out.eigenvalues.assign(eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(count));
  out.eigenfunctions.assign(eigenfunctions.begin(),
                            eigenfunctions.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

Curve sample_mean(const FunctionalDataset& data) {
  const std::size_t m = data.grid_size();
  std::vector<double> sum(m, 0.0);
  const auto& k = kernels::active();
  for (std::size_t n = 0; n < data.size(); ++n) k.axpy(1.0, data.values(n).data(), sum.data(), m);
  const double inv = 1.0 / static_cast<double>(data.size());
  for (double& v : sum) v *= inv;
  return Curve(data.grid(), std::move(sum));
}

namespace {

Matrix centered(const FunctionalDataset& data, const Curve& mean) {
  Matrix out = data.curve_values();
  for (std::size_t n = 0; n < out.rows(); ++n) {
    auto row = out.row(n);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] -= mean[i];
  }
  return out;
}

// Upper triangle of Σ_n x_n x_nᵀ / N, accumulated row by row in sample order.
SymMatrix covariance_of_centered(const Matrix& xc) {
  const std::size_t m = xc.cols();
  const auto& k = kernels::active();
  Matrix acc(m, m);
  for (std::size_t n = 0; n < xc.rows(); ++n) {
    const auto row = xc.row(n);
    for (std::size_t i = 0; i < m; ++i) k.axpy(row[i], row.data() + i, acc.row(i).data() + i, m - i);
  }
  const double inv = 1.0 / static_cast<double>(xc.rows());
  SymMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) out.set(i, j, acc(i, j) * inv);
  }
  return out;
}

void orient(std::vector<double>& v, std::span<const double> weights) {
  double area = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    area += weights[i] * v[i];
    peak = std::max(peak, std::abs(v[i]));
  }
  bool flip = area < 0.0;
  if (std::abs(area) <= 1e-12) {
    const auto first = std::ranges::find_if(v, [&](double x) { return std::abs(x) > 1e-12 * peak; });
    flip = first != v.end() && *first < 0.0;
  }
  if (flip) {
    for (double& x : v) x = -x;
  }
}

}  // namespace

SymMatrix sample_covariance(const FunctionalDataset& data) {
  return covariance_of_centered(centered(data, sample_mean(data)));
}

FpcaBasis compute_fpca_full(const FunctionalDataset& data) {
  Curve mean = sample_mean(data);
  const SymMatrix cov = covariance_of_centered(centered(data, mean));
  const std::size_t m = cov.size();
  const auto w = data.grid().weights();

  std::vector<double> root(m);
  for (std::size_t i = 0; i < m; ++i) root[i] = std::sqrt(w[i]);
  SymMatrix weighted(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) weighted.set(i, j, root[i] * cov(i, j) * root[j]);
  }
  const EigenDecomposition eig = sym_eig(weighted);

  FpcaBasis out{std::move(mean), eig.values, {}, eig.values};
  out.eigenfunctions.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = eig.vectors(i, c) / root[i];
    orient(v, w);
    out.eigenfunctions.emplace_back(data.grid(), std::move(v));
  }
  return out;
}

FpcaBasis compute_fpca(const FunctionalDataset& data, std::size_t p) {
  if (p == 0) throw Error(ErrorKind::InvalidArgument, "need at least one component");
  if (p > data.grid_size() || p + 1 > data.size()) {
    throw Error(ErrorKind::ComponentDegenerate,
                "p = " + std::to_string(p) + " exceeds min(m, N-1) for m = " +
                    std::to_string(data.grid_size()) + ", N = " + std::to_string(data.size()));
  }
  return compute_fpca_full(data).truncate(p, data.size());
}

std::size_t choose_p_by_variance(std::span<const double> eigenvalues, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "variance threshold must lie in (0, 1]");
  }
  if (eigenvalues.empty()) throw Error(ErrorKind::InvalidArgument, "empty spectrum");
  const double top = std::abs(eigenvalues.front());
  double total = 0.0;
  for (double v : eigenvalues) {
    if (!std::isfinite(v) || v < -1e-10 * top) {
      throw Error(ErrorKind::InvalidArgument, "spectrum must be finite and nonnegative");
    }
    total += std::max(v, 0.0);
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "spectrum sums to zero");
  double running = 0.0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    running += std::max(eigenvalues[i], 0.0);
    if (running / total >= threshold) return i + 1;
  }
  return eigenvalues.size();
}

}  // namespace fqreg
