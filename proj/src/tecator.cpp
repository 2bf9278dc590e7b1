#include "fqreg/tecator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "fqreg/error.hpp"
#include "fqreg/grid.hpp"

namespace fqreg {

namespace {

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                       : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view cell, std::size_t line, std::size_t column) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    parse_error(line, "column " + std::to_string(column + 1) + ": '" + std::string(cell) +
                          "' is not a finite number");
  }
  return value;
}

}  // namespace

SpectraTable parse_spectra_csv(std::istream& in) {
  SpectraTable table;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<double> cells;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;
    const auto parts = split_cells(line);

    if (columns == 0) {
      if (parts.size() < 5) parse_error(line_no, "header needs at least 4 wavelength columns and `fat`");
      if (trim(parts.back()) != "fat") parse_error(line_no, "last header column must be `fat`");
      columns = parts.size();
      for (std::size_t c = 0; c + 1 < columns; ++c) {
        table.wavelengths.push_back(parse_number(parts[c], line_no, c));
        if (c > 0 && !(table.wavelengths[c] > table.wavelengths[c - 1])) {
          parse_error(line_no, "wavelengths must be strictly increasing");
        }
      }
      continue;
    }

    if (parts.size() != columns) {
      parse_error(line_no, "expected " + std::to_string(columns) + " columns, found " +
                               std::to_string(parts.size()));
    }
    for (std::size_t c = 0; c < columns; ++c) cells.push_back(parse_number(parts[c], line_no, c));
    table.fat.push_back(cells.back());
    cells.pop_back();
  }
  if (columns == 0) throw Error(ErrorKind::Parse, "line 1: missing header");
  if (table.fat.empty()) throw Error(ErrorKind::Parse, "no data rows");

  const std::size_t width = columns - 1;
  table.absorbance = Matrix(table.fat.size(), width);
  std::copy(cells.begin(), cells.end(), table.absorbance.data().begin());
  return table;
}

SpectraTable load_spectra_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  return parse_spectra_csv(in);
}

FunctionalDataset to_functional_dataset(const SpectraTable& table, std::size_t m) {
  const double lo = table.wavelengths.front();
  const double span = table.wavelengths.back() - lo;
  std::vector<double> knots(table.wavelengths.size());
  for (std::size_t i = 0; i < knots.size(); ++i) knots[i] = (table.wavelengths[i] - lo) / span;

  const Grid grid = make_uniform_grid(m);
  const SplineResampler resample(knots, grid);
  Matrix curves(table.size(), m);
  for (std::size_t n = 0; n < table.size(); ++n) {
    const Curve c = resample(table.absorbance.row(n));
    std::ranges::copy(c.values(), curves.row(n).begin());
  }
  return FunctionalDataset(grid, std::move(curves), table.fat);
}

TecatorReport run_tecator_analysis(const SpectraTable& table, const std::vector<std::size_t>& ps,
                                   std::size_t m) {
  const FunctionalDataset data = to_functional_dataset(table, m);
  const FpcaBasis full = compute_fpca_full(data);
  TecatorReport report;
  report.grid_size = m;
  report.selected_p = choose_p_by_variance(full.spectrum, 0.85);
  for (std::size_t p : ps) {
    if (p == 0) throw Error(ErrorKind::InvalidArgument, "p must be >= 1");
    report.results.push_back(run_test(data, full, p));
  }
  return report;
}

}  // namespace fqreg
