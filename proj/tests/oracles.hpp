#pragma once
// Reference computations used only by the tests. None of these call into the
// library's numerical paths.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace fqreg::testing {

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 50) {
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> recurse =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(lo, mid, flo, flm, fmid);
        const double right = simpson(mid, hi, fmid, frm, fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return recurse(lo, mid, flo, flm, fmid, left, eps / 2, d - 1) +
               recurse(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// P(χ²(1) > x) = 2(1 − Φ(√x)) = erfc(√(x/2)).
inline double chi2_1_tail(double x) { return std::erfc(std::sqrt(0.5 * x)); }

/// Karhunen–Loève pairs of standard Brownian motion on [0, 1], j >= 1.
inline double brownian_eigenvalue(int j) {
  const double w = (j - 0.5) * std::numbers::pi;
  return 1.0 / (w * w);
}

inline double brownian_eigenfunction(int j, double t) {
  return std::numbers::sqrt2 * std::sin((j - 0.5) * std::numbers::pi * t);
}

/// τ² = 1 + Σ_{i>=2} b_i² λ_i for k ≡ 1 under Brownian motion with unit error
/// variance and p = 1, where b_i = √2/((i−½)π).
inline double analytic_tau2_p1() {
  double tail = 0.0;
  for (int i = 200000; i >= 2; --i) {
    const double w = (i - 0.5) * std::numbers::pi;
    tail += 2.0 / (w * w * w * w);
  }
  return 1.0 + tail;
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

}  // namespace fqreg::testing
