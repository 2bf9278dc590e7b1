#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string_view>
#include <thread>

#include "fqreg/error.hpp"
#include "fqreg/grid.hpp"
#include "fqreg/quad_test.hpp"
#include "fqreg/simulate.hpp"
#include "fqreg/tecator.hpp"

namespace fqreg::cli {

using json = nlohmann::json;

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t comma; (comma = line.find(',', start)) != std::string_view::npos; start = comma + 1) {
    out.push_back(line.substr(start, comma - start));
  }
  out.push_back(line.substr(start));
  return out;
}

std::optional<double> to_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '"')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

unsigned default_threads() {
  if (const char* env = std::getenv("FQREG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string percent(double p) { return fmt::format("{:.2f}", 100.0 * p); }

json fit_json(const TestResult& r, std::size_t n) {
  json j;
  j["N"] = n;
  j["p"] = r.fit.p;
  j["dof"] = r.dof;
  j["u_stat"] = r.u_stat;
  j["p_value"] = r.p_value;
  j["p_value_underflow"] = r.p_value_underflow;
  j["eigenvalues"] = r.basis.eigenvalues;
  j["variance_explained"] = r.variance_explained;
  j["a_hat"] = r.fit.a_hat;
  j["b_hat"] = r.fit.b_hat;
  j["mu_hat"] = r.fit.mu_hat;
  j["tau2_hat"] = r.fit.tau2_hat;
  return j;
}

void print_test_text(std::ostream& out, const TestResult& r, std::size_t n) {
  out << fmt::format("Quadratic-term significance test (N = {}, p = {})\n", n, r.fit.p);
  out << fmt::format("  U_N        {:.6f}\n", r.u_stat);
  out << fmt::format("  dof r      {}\n", r.dof);
  out << fmt::format("  p-value    {:.6g} ({}%){}\n", r.p_value, percent(r.p_value),
                     r.p_value_underflow ? " [below double range]" : "");
  out << fmt::format("  tau2_hat   {:.6g}\n", r.fit.tau2_hat);
  out << "\n  component  eigenvalue      cum. variance (%)\n";
  for (std::size_t i = 0; i < r.basis.p(); ++i) {
    out << fmt::format("  {:>9}  {:<14.6g}  {:>6}\n", i + 1, r.basis.eigenvalues[i],
                       percent(r.basis.variance_explained(i + 1)));
  }
  out << "\n  quadratic coefficients (i, j, raw A_hat, a_ij)\n";
  const VechIndex vech(r.fit.p);
  for (std::size_t k = 0; k < vech.size(); ++k) {
    const auto [i, j] = vech.pairs[k];
    out << fmt::format("  ({}, {})  {:>14.6g}  {:>14.6g}\n", i + 1, j + 1, r.fit.a_hat[k], r.fit.a(i, j));
  }
  out << "\n  linear coefficients (i, B_hat)\n";
  for (std::size_t i = 0; i < r.fit.b_hat.size(); ++i) {
    out << fmt::format("  {:>3}  {:>14.6g}\n", i + 1, r.fit.b_hat[i]);
  }
  out << fmt::format("\n  intercept  {:.6g}\n", r.fit.mu_hat);
}

json power_json(const PowerRow& row) {
  const auto& s = row.scenario;
  return json{{"design", std::string(to_string(s.design))},
              {"N", s.n_curves},
              {"grid_size", s.grid_size},
              {"c", s.c},
              {"p", s.p},
              {"alpha", s.alpha},
              {"iterations", s.iterations},
              {"seed", s.seed},
              {"rejections", row.rejections},
              {"rejection_rate", row.rejection_rate},
              {"mc_stderr", row.mc_stderr}};
}

void print_power_text(std::ostream& out, const PowerRow& row) {
  const auto& s = row.scenario;
  out << fmt::format("{:<13} {:>5} {:>5} {:>3} {:>6} {:>6} {:>10} {:>8} {:>7}\n", "design", "N", "c", "p",
                     "alpha", "iters", "rejections", "rate(%)", "se(%)");
  out << fmt::format("{:<13} {:>5} {:>5.2f} {:>3} {:>6.2f} {:>6} {:>10} {:>8} {:>7}\n", to_string(s.design),
                     s.n_curves, s.c, s.p, s.alpha, s.iterations, row.rejections,
                     percent(row.rejection_rate), percent(row.mc_stderr));
}

void print_tecator_text(std::ostream& out, const TecatorReport& report, std::size_t n) {
  out << fmt::format("Tecator quadratic-term test (N = {}, grid m = {})\n", n, report.grid_size);
  std::string p_row = fmt::format("{:<22}", "p");
  std::string r_row = fmt::format("{:<22}", "r");
  std::string u_row = fmt::format("{:<22}", "U_N");
  std::string pv_row = fmt::format("{:<22}", "p-value (%)");
  std::string ve_row = fmt::format("{:<22}", "variance explained (%)");
  for (const auto& r : report.results) {
    p_row += fmt::format(" {:>9}", r.fit.p);
    r_row += fmt::format(" {:>9}", r.dof);
    u_row += fmt::format(" {:>9.4f}", r.u_stat);
    pv_row += fmt::format(" {:>9}", percent(r.p_value));
    ve_row += fmt::format(" {:>9}", percent(r.variance_explained));
  }
  out << p_row << '\n' << r_row << '\n' << u_row << '\n' << pv_row << '\n' << ve_row << '\n';
  out << fmt::format("p selected by the 85% variance rule: {}\n", report.selected_p);
}

FunctionalDataset resample(const FunctionalDataset& data, std::size_t m) {
  if (m == data.grid_size()) return data;
  const SplineResampler spline(data.grid().points(), make_uniform_grid(m));
  Matrix curves(data.size(), m);
  for (std::size_t n = 0; n < data.size(); ++n) {
    const Curve c = spline(data.values(n));
    std::ranges::copy(c.values(), curves.row(n).begin());
  }
  return FunctionalDataset(spline.target(), std::move(curves),
                           std::vector<double>(data.responses().begin(), data.responses().end()));
}

}  // namespace

FunctionalDataset parse_curves_csv(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<double> values;
  std::vector<double> y;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto cells = split(line);
    if (columns == 0 && y.empty() && !to_number(cells.front())) {
      std::string_view last = cells.back();
      while (!last.empty() && (last.front() == ' ' || last.front() == '"')) last.remove_prefix(1);
      while (!last.empty() && (last.back() == ' ' || last.back() == '"')) last.remove_suffix(1);
      if (last != "y") {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": last header column must be `y`");
      }
      columns = cells.size();
      continue;
    }
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(columns) + " columns, found " +
                                        std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < columns; ++c) {
      const auto v = to_number(cells[c]);
      if (!v) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": column " + std::to_string(c + 1) +
                                          " is not a finite number");
      }
      (c + 1 == columns ? y : values).push_back(*v);
    }
  }
  if (y.empty()) throw Error(ErrorKind::Parse, "no data rows");
  const std::size_t m = columns - 1;
  const Grid grid = make_uniform_grid(m);
  Matrix curves(y.size(), m);
  std::ranges::copy(values, curves.data().begin());
  return FunctionalDataset(grid, std::move(curves), std::move(y));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Significance test for the quadratic term in functional quadratic regression", "fqreg"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = SimScenario{}.seed;
  std::size_t grid_size = 101;
  std::string output = "text";
  unsigned threads = default_threads();
  app.add_option("--seed", seed, "Random seed");
  auto* grid_opt = app.add_option("--grid-size", grid_size, "Analysis grid resolution m")
                       ->check(CLI::Range(std::size_t{4}, std::size_t{100000}));
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", threads, "Worker threads (default: FQREG_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  auto* test_cmd = app.add_subcommand("test", "Run the test on a curves CSV");
  std::string curves_path;
  std::size_t test_p = 0;
  double var_threshold = 0.0;
  test_cmd->add_option("--curves", curves_path, "CSV: m value columns then y")->required();
  auto* p_opt = test_cmd->add_option("--p", test_p, "Number of principal components")
                    ->check(CLI::PositiveNumber);
  auto* thr_opt = test_cmd->add_option("--var-threshold", var_threshold, "Pick p by cumulative variance")
                      ->check(CLI::Range(0.0, 1.0));
  p_opt->excludes(thr_opt);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size/power study");
  SimScenario scenario;
  std::string design = "gaussian";
  sim_cmd->add_option("--design", design)->check(CLI::IsMember({"gaussian", "chebyshev-t5", "chebyshev_t5"}));
  sim_cmd->add_option("--N", scenario.n_curves)->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  sim_cmd->add_option("--c", scenario.c)->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--p", scenario.p)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--alpha", scenario.alpha)->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--iters", scenario.iterations)->check(CLI::PositiveNumber);

  auto* tec_cmd = app.add_subcommand("tecator", "Tecator spectra analysis");
  std::string tecator_path;
  std::vector<std::size_t> tecator_ps{1, 2, 3};
  tec_cmd->add_option("--file", tecator_path, "Spectra CSV (wavelength columns, then fat)")->required();
  tec_cmd->add_option("--p", tecator_ps, "Comma-separated component counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (test_cmd->parsed() && p_opt->count() == 0 && thr_opt->count() == 0) {
      throw CLI::RequiredError("--p or --var-threshold");
    }
    if (sim_cmd->parsed() && !(scenario.alpha > 0.0 && scenario.alpha < 1.0)) {
      throw CLI::ValidationError("--alpha", "must lie strictly between 0 and 1");
    }
    if (test_cmd->parsed() && thr_opt->count() > 0 && !(var_threshold > 0.0)) {
      throw CLI::ValidationError("--var-threshold", "must lie in (0, 1]");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (test_cmd->parsed()) {
      std::ifstream in(curves_path, std::ios::binary);
      if (!in) throw Error(ErrorKind::Parse, "cannot open '" + curves_path + "'");
      FunctionalDataset data = parse_curves_csv(in);
      if (grid_opt->count() > 0) data = resample(data, grid_size);
      const ComponentChoice choice =
          p_opt->count() > 0 ? ComponentChoice{test_p} : ComponentChoice{VarianceThreshold{var_threshold}};
      const TestResult result = run_test(data, choice);
      if (output == "json") {
        json j = fit_json(result, data.size());
        j["subcommand"] = "test";
        out << j.dump() << '\n';
      } else {
        print_test_text(out, result, data.size());
      }
    } else if (sim_cmd->parsed()) {
      scenario.design = parse_design(design);
      scenario.seed = seed;
      scenario.grid_size = grid_size;
      const PowerRow row = run_power_study(scenario, threads);
      if (output == "text") print_power_text(out, row);
      out << power_json(row).dump() << '\n';
    } else if (tec_cmd->parsed()) {
      const SpectraTable table = load_spectra_csv(tecator_path);
      const TecatorReport report = run_tecator_analysis(table, tecator_ps, grid_size);
      if (output == "json") {
        json j;
        j["subcommand"] = "tecator";
        j["N"] = table.size();
        j["grid_size"] = report.grid_size;
        j["selected_p"] = report.selected_p;
        j["results"] = json::array();
        for (const auto& r : report.results) j["results"].push_back(fit_json(r, table.size()));
        out << j.dump() << '\n';
      } else {
        print_tecator_text(out, report, table.size());
      }
    }
  } catch (const Error& e) {
    err << "fqreg: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace fqreg::cli
