// Acceptance runner: one [PASS]/[FAIL] line per criterion.
//   fqreg_acceptance                 all criteria
//   fqreg_acceptance --criterion k   only criterion k
// The Tecator CSV is read from FQREG_TECATOR_CSV when set.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "fqreg/error.hpp"
#include "fqreg/fpca.hpp"
#include "fqreg/grid.hpp"
#include "fqreg/linalg.hpp"
#include "fqreg/quad_test.hpp"
#include "fqreg/simulate.hpp"
#include "fqreg/tecator.hpp"

namespace {

using namespace fqreg;

struct Verdict {
  bool pass;
  std::string detail;
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict rate_check(const SimScenario& s, double lo, double hi) {
  const PowerRow row = run_power_study(s, threads());
  return {row.rejection_rate >= lo && row.rejection_rate <= hi,
          fmt("rate %.4f (%zu/%zu), band [%.3f, %.3f]", row.rejection_rate, row.rejections, s.iterations, lo, hi)};
}

Verdict criterion_size() {
  SimScenario s;
  s.n_curves = 500;
  s.c = 0.0;
  s.iterations = 2000;
  return rate_check(s, 0.041, 0.071);
}

Verdict criterion_power_gaussian() {
  SimScenario s;
  s.n_curves = 200;
  s.c = 0.4;
  s.iterations = 1000;
  return rate_check(s, 0.67, 0.77);
}

Verdict criterion_power_chebyshev() {
  SimScenario s;
  s.design = Design::ChebyshevT5;
  s.n_curves = 500;
  s.c = 0.2;
  s.iterations = 1000;
  return rate_check(s, 0.955, 1.0);
}

Verdict criterion_tecator() {
  std::string path = std::string(FQREG_DATA_DIR) + "/tecator.csv";
  if (const char* env = std::getenv("FQREG_TECATOR_CSV")) path = env;
  const SpectraTable table = load_spectra_csv(path);
  const TecatorReport r = run_tecator_analysis(table, {1, 2, 3}, 101);
  const double p1 = 100 * r.results[0].p_value;
  const double p2 = 100 * r.results[1].p_value;
  const double p3 = 100 * r.results[2].p_value;
  const bool bands = p1 >= 0.5 && p1 <= 2.5 && p2 >= 9 && p2 <= 18 && p3 < 0.5;
  const bool order = p1 < 5 && p2 >= 5 && p3 < 5;
  return {bands && order, fmt("N=%zu p-values(%%): p=1 %.4f [0.5,2.5], p=2 %.4f [9,18], p=3 %.4g [<0.5]; ordering %s",
                              table.size(), p1, p2, p3, order ? "ok" : "wrong")};
}

double analytic_tau2() {
  double s = 0.0;
  for (int i = 2; i < 200000; ++i) {
    const double x = (i - 0.5) * std::numbers::pi;
    s += 2.0 / (x * x * x * x);
  }
  return 1.0 + s;
}

Verdict criterion_tau2() {
  SimScenario s;
  s.n_curves = 2000;
  s.c = 0.0;
  const auto data = simulate_dataset(s, 0);
  const QuadFit fit = fit_quadratic(data, compute_fpca(data, 1));
  const double tau2 = analytic_tau2();
  const double rel = std::abs(fit.tau2_hat - tau2) / tau2;
  return {rel <= 0.05, fmt("tau2_hat %.6f vs %.6f (rel %.4f, limit 0.05)", fit.tau2_hat, tau2, rel)};
}

Verdict criterion_fpca() {
  SimScenario s;
  s.n_curves = 2000;
  const auto data = simulate_dataset(s, 0);
  const FpcaBasis b = compute_fpca(data, 3);
  bool ok = true;
  std::string d;
  for (int j = 1; j <= 3; ++j) {
    const double w = (j - 0.5) * std::numbers::pi;
    const double lambda = 1.0 / (w * w);
    const Curve v = sample(data.grid(), [&](double t) { return std::numbers::sqrt2 * std::sin(w * t); });
    const Curve& e = b.eigenfunctions[j - 1];
    const double corr = std::abs(inner_product(e, v)) / std::sqrt(inner_product(e, e) * inner_product(v, v));
    const double rel = std::abs(b.eigenvalues[j - 1] - lambda) / lambda;
    ok = ok && rel <= 0.10 && corr >= 0.95;
    d += fmt("j=%d lambda %.5f/%.5f corr %.4f; ", j, b.eigenvalues[j - 1], lambda, corr);
  }
  return {ok, d};
}

double median(std::vector<double> v) {
  std::ranges::sort(v);
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Verdict criterion_properties() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* name) {
    if (!ok) failed.emplace_back(name);
  };

  // Sign flips of eigenfunctions.
  {
    SimScenario s;
    s.n_curves = 300;
    s.c = 0.3;
    const auto data = simulate_dataset(s, 0);
    const FpcaBasis basis = compute_fpca(data, 3);
    const double u0 = u_statistic(fit_quadratic(data, basis), data.size());
    double worst = 0.0;
    for (unsigned mask = 1; mask < 8; ++mask) {
      FpcaBasis f = basis;
      for (std::size_t i = 0; i < 3; ++i) {
        if (!(mask >> i & 1u)) continue;
        std::vector<double> v(f.eigenfunctions[i].values().begin(), f.eigenfunctions[i].values().end());
        for (double& x : v) x = -x;
        f.eigenfunctions[i] = Curve(data.grid(), v);
      }
      worst = std::max(worst, std::abs(u_statistic(fit_quadratic(data, f), data.size()) - u0) / u0);
    }
    check(worst <= 1e-8, "sign-flip");
  }

  // Nonnegativity.
  {
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
      SimScenario s;
      s.n_curves = 40 + t;
      s.grid_size = 21;
      s.c = (t % 5) * 0.25;
      s.p = 1 + t % 3;
      s.design = t % 2 ? Design::Gaussian : Design::ChebyshevT5;
      s.seed = 1000 + t;
      ok = ok && run_test(simulate_dataset(s, 0), s.p).u_stat >= 0.0;
    }
    check(ok, "U>=0");
  }

  // Noiseless quadratic recovery.
  {
    SimScenario s;
    s.n_curves = 200;
    const auto base = simulate_dataset(s, 0);
    const FpcaBasis basis = compute_fpca(base, 2);
    const Matrix sc = compute_scores(base, basis);
    const std::array<double, 3> a{0.7, -0.4, 1.1};
    std::vector<double> y(base.size());
    for (std::size_t n = 0; n < y.size(); ++n) {
      const double s0 = sc(n, 0), s1 = sc(n, 1);
      y[n] = 0.2 + 0.5 * s0 - 0.3 * s1 + a[0] * s0 * s0 + a[1] * s1 * s0 + a[2] * s1 * s1;
    }
    const QuadFit fit = fit_quadratic(FunctionalDataset(base.grid(), base.curve_values(), y), basis);
    double err = 0.0;
    for (std::size_t k = 0; k < 3; ++k) err = std::max(err, std::abs(fit.a_hat[k] - a[k]));
    check(err <= 1e-8, "exact-recovery");
  }

  // χ²(2) tail is exp(−x/2).
  {
    double err = 0.0;
    for (double x : {0.01, 0.5, 1.0, 2.0, 5.99, 10.0, 30.0}) {
      err = std::max(err, std::abs(chi2_upper_tail(x, 2) - std::exp(-x / 2)));
    }
    check(err <= 1e-10, "chi2-r2");
  }

  // Trapezoid rule on linear integrands, uniform and nonuniform grids.
  {
    const Grid g({0.0, 0.1, 0.35, 0.4, 0.9, 1.0});
    const double e1 = std::abs(integral(sample(g, [](double t) { return 3 * t - 1; })) - 0.5);
    const double e2 = std::abs(integral(sample(make_uniform_grid(101), [](double t) { return 2 + t; })) - 2.5);
    check(std::max(e1, e2) <= 1e-14, "trapezoid");
  }

  // Spline passes through its knots.
  {
    const std::vector<double> x{0.0, 0.2, 0.5, 0.6, 1.0};
    const std::vector<double> y{1.0, -2.0, 0.5, 3.0, 0.0};
    const Curve c = natural_cubic_spline(x, y, Grid(x));
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(c[i] - y[i]));
    check(err <= 1e-12, "spline-nodes");
  }

  // Thread count does not change results.
  {
    SimScenario s;
    s.n_curves = 100;
    s.iterations = 60;
    s.c = 0.2;
    const PowerRow a = run_power_study(s, 1);
    const PowerRow b = run_power_study(s, 4);
    const auto ia = run_iterations(s, 1);
    const auto ib = run_iterations(s, 4);
    bool same = a.rejections == b.rejections;
    for (std::size_t i = 0; i < ia.size(); ++i) same = same && ia[i].u_stat == ib[i].u_stat;
    check(same, "thread-reproducibility");
  }

  // Larger samples give larger statistics under the alternative.
  double m200 = 0.0, m500 = 0.0;
  {
    SimScenario s;
    s.c = 0.4;
    s.iterations = 200;
    s.n_curves = 200;
    std::vector<double> u;
    for (const auto& o : run_iterations(s, threads())) u.push_back(o.u_stat);
    m200 = median(u);
    s.n_curves = 500;
    u.clear();
    for (const auto& o : run_iterations(s, threads())) u.push_back(o.u_stat);
    m500 = median(u);
    check(m500 > m200, "consistency");
  }

  std::string d = failed.empty() ? "all 8 properties hold" : "failed:";
  for (const auto& f : failed) d += " " + f;
  d += fmt(" (median U: N=200 %.3f, N=500 %.3f)", m200, m500);
  return {failed.empty(), d};
}

struct Criterion {
  const char* name;
  Verdict (*run)();
};

const std::array<Criterion, 7> kCriteria{{
    {"empirical size, gaussian design", criterion_size},
    {"power, gaussian design, c=0.4", criterion_power_gaussian},
    {"power, chebyshev design, c=0.2", criterion_power_chebyshev},
    {"tecator p-values", criterion_tecator},
    {"tau2 oracle", criterion_tau2},
    {"fpca oracle", criterion_fpca},
    {"property suite", criterion_properties},
}};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
      return 64;
    }
  }
  if (which.empty()) {
    for (int k = 1; k <= 7; ++k) which.push_back(k);
  }
  int failures = 0;
  for (int k : which) {
    if (k < 1 || k > 7) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 64;
    }
    const Criterion& c = kCriteria[k - 1];
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::printf("[%s] criterion %d %s: %s\n", v.pass ? "PASS" : "FAIL", k, c.name, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
