#include "fqreg/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "fqreg/error.hpp"
#include "fqreg/quad_test.hpp"

namespace fqreg {

std::string_view to_string(Design design) noexcept {
  return design == Design::Gaussian ? "gaussian" : "chebyshev_t5";
}

Design parse_design(std::string_view name) {
  if (name == "gaussian") return Design::Gaussian;
  if (name == "chebyshev-t5" || name == "chebyshev_t5") return Design::ChebyshevT5;
  throw Error(ErrorKind::InvalidArgument, "unknown design '" + std::string(name) + "'");
}

void SimScenario::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (n_curves < 2) fail("n_curves must be >= 2");
  if (grid_size < 4) fail("grid_size must be >= 4");
  if (!(c >= 0.0) || !std::isfinite(c)) fail("c must be finite and >= 0");
  if (p < 1) fail("p must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (iterations < 1) fail("iterations must be >= 1");
}

Curve simulate_brownian(const Grid& grid, Rng& rng) {
  std::vector<double> v(grid.size());
  v[0] = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    v[i] = v[i - 1] + std::sqrt(grid[i] - grid[i - 1]) * rng.normal();
  }
  return Curve(grid, std::move(v));
}

Curve chebyshev_t5_curve(const Grid& grid, const std::array<double, 4>& coeffs) {
  return sample(grid, [&](double t) {
    return (coeffs[0] + coeffs[1] * t + coeffs[2] * (2.0 * t * t - 1.0) +
            coeffs[3] * (4.0 * t * t * t - 3.0 * t)) /
           4.0;
  });
}

Curve simulate_chebyshev_t5(const Grid& grid, Rng& rng) {
  std::array<double, 4> coeffs{};
  for (double& c : coeffs) c = rng.student_t(5);
  return chebyshev_t5_curve(grid, coeffs);
}

std::vector<double> response_from_noise(const std::vector<Curve>& curves, double c,
                                        std::span<const double> noise) {
  if (noise.size() != curves.size()) {
    throw Error(ErrorKind::InvalidArgument, "one error term per curve required");
  }
  std::vector<double> y(curves.size());
  for (std::size_t n = 0; n < curves.size(); ++n) {
    const double linear = integral(curves[n]);
    y[n] = linear + c * linear * linear + noise[n];
  }
  return y;
}

std::vector<double> generate_response(const std::vector<Curve>& curves, double c, Design design,
                                      Rng& rng) {
  std::vector<double> noise(curves.size());
  for (double& e : noise) e = design == Design::Gaussian ? rng.normal() : rng.uniform(-0.5, 0.5);
  return response_from_noise(curves, c, noise);
}

FunctionalDataset simulate_dataset(const SimScenario& scenario, std::size_t iteration) {
  const Grid grid = make_uniform_grid(scenario.grid_size);
  Rng rng = derive_stream(scenario.seed, iteration);
  std::vector<Curve> curves;
  curves.reserve(scenario.n_curves);
  for (std::size_t n = 0; n < scenario.n_curves; ++n) {
    curves.push_back(scenario.design == Design::Gaussian ? simulate_brownian(grid, rng)
                                                         : simulate_chebyshev_t5(grid, rng));
  }
  std::vector<double> y = generate_response(curves, scenario.c, scenario.design, rng);
  return FunctionalDataset(curves, std::move(y));
}

IterationOutcome run_iteration(const SimScenario& scenario, std::size_t iteration) {
  const TestResult result = run_test(simulate_dataset(scenario, iteration), scenario.p);
  return {result.u_stat, result.p_value, result.fit.tau2_hat};
}

std::vector<IterationOutcome> run_iterations(const SimScenario& scenario, unsigned threads) {
  scenario.validate();
  const std::size_t total = scenario.iterations;
  std::vector<IterationOutcome> outcomes(total);
  std::vector<std::optional<Error>> failures(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      try {
        outcomes[i] = run_iteration(scenario, i);
      } catch (const Error& e) {
        failures[i] = e.with_stage("iteration " + std::to_string(i));
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }

  for (const auto& f : failures) {
    if (f) throw *f;
  }
  return outcomes;
}

PowerRow run_power_study(const SimScenario& scenario, unsigned threads) {
  const auto outcomes = run_iterations(scenario, threads);
  PowerRow row;
  row.scenario = scenario;
  row.rejections = static_cast<std::size_t>(std::ranges::count_if(
      outcomes, [&](const IterationOutcome& o) { return o.p_value < scenario.alpha; }));
  const double iters = static_cast<double>(scenario.iterations);
  row.rejection_rate = static_cast<double>(row.rejections) / iters;
  row.mc_stderr = std::sqrt(row.rejection_rate * (1.0 - row.rejection_rate) / iters);
  return row;
}

}  // namespace fqreg
