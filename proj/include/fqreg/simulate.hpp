#pragma once
// Seeded data generators and the Monte Carlo size/power harness.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fqreg/fpca.hpp"
#include "fqreg/grid.hpp"
#include "fqreg/rng.hpp"

namespace fqreg {

/// gaussian: Brownian-motion curves with N(0,1) errors.
/// chebyshev_t5: Chebyshev-polynomial curves with Student-t(5) coefficients
/// and Uniform(−0.5, 0.5) errors.
enum class Design { Gaussian, ChebyshevT5 };

std::string_view to_string(Design design) noexcept;
/// Accepts "gaussian", "chebyshev-t5" and "chebyshev_t5".
Design parse_design(std::string_view name);

struct SimScenario {
  std::size_t n_curves = 500;
  std::size_t grid_size = 101;
  double c = 0.0;
  std::size_t p = 1;
  double alpha = 0.05;
  std::size_t iterations = 2000;
  Design design = Design::Gaussian;
  std::uint64_t seed = 20111;

  /// Throws InvalidArgument for out-of-range fields.
  void validate() const;
};

struct PowerRow {
  SimScenario scenario;
  double rejection_rate = 0.0;
  std::size_t rejections = 0;
  double mc_stderr = 0.0;
};

/// What one replication produced.
struct IterationOutcome {
  double u_stat = 0.0;
  double p_value = 1.0;
  double tau2_hat = 0.0;
};

/// Standard Brownian motion: B(t_0) = 0, independent N(0, Δt) increments.
Curve simulate_brownian(const Grid& grid, Rng& rng);

/// (T1 + T2·t + T3·(2t² − 1) + T4·(4t³ − 3t)) / 4 for given coefficients.
Curve chebyshev_t5_curve(const Grid& grid, const std::array<double, 4>& coeffs);

/// chebyshev_t5_curve with iid Student-t(5) coefficients.
Curve simulate_chebyshev_t5(const Grid& grid, Rng& rng);

/// Y_n = ∫X_n + c·(∫X_n)² + ε_n with the given errors (k ≡ 1, h ≡ c, μ = 0).
std::vector<double> response_from_noise(const std::vector<Curve>& curves, double c,
                                        std::span<const double> noise);

/// Same model with errors drawn for `design`.
std::vector<double> generate_response(const std::vector<Curve>& curves, double c, Design design,
                                      Rng& rng);

/// The dataset for one replication: N curves first, then N errors, all from
/// derive_stream(seed, iteration).
FunctionalDataset simulate_dataset(const SimScenario& scenario, std::size_t iteration);

IterationOutcome run_iteration(const SimScenario& scenario, std::size_t iteration);

/// Every replication, in iteration order. `threads` only changes speed.
std::vector<IterationOutcome> run_iterations(const SimScenario& scenario, unsigned threads = 1);

PowerRow run_power_study(const SimScenario& scenario, unsigned threads = 1);

}  // namespace fqreg
