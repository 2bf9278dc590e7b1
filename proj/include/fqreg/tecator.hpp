#pragma once
// Near-infrared spectra with fat content: CSV ingestion, resampling to the
// analysis grid, and the per-p significance report.
//
// CSV layout: a header row whose first columns are the wavelengths (nm) and
// whose last column is named `fat`, then one row per sample. UTF-8, `.`
// decimal separator, LF or CRLF line endings.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <vector>

#include "fqreg/fpca.hpp"
#include "fqreg/linalg.hpp"
#include "fqreg/quad_test.hpp"

namespace fqreg {

struct SpectraTable {
  std::vector<double> wavelengths;
  /// N × (number of wavelengths).
  Matrix absorbance;
  std::vector<double> fat;

  std::size_t size() const noexcept { return fat.size(); }
};

SpectraTable load_spectra_csv(const std::filesystem::path& path);
SpectraTable parse_spectra_csv(std::istream& in);

/// Wavelengths rescaled affinely to [0, 1]; each spectrum resampled onto the
/// uniform m-point grid by natural cubic spline; responses are the fat values.
FunctionalDataset to_functional_dataset(const SpectraTable& table, std::size_t m);

struct TecatorReport {
  std::vector<TestResult> results;
  /// p picked by the 85% cumulative-variance rule.
  std::size_t selected_p = 0;
  std::size_t grid_size = 0;
};

TecatorReport run_tecator_analysis(const SpectraTable& table, const std::vector<std::size_t>& ps,
                                   std::size_t m);

}  // namespace fqreg
