#pragma once

#include <complex>
#include <filesystem>
#include <istream>
#include <vector>

namespace pbholo {

using Complex = std::complex<double>;

/// Tabulated optical constants, strictly increasing in wavelength (meters).
class DispersionTable {
 public:
  struct Row {
    double wavelength;
    double n;
    double k;
  };

  DispersionTable() = default;
  explicit DispersionTable(std::vector<Row> rows);

  const std::vector<Row>& rows() const noexcept { return rows_; }
  double min_wavelength() const { return rows_.front().wavelength; }
  double max_wavelength() const { return rows_.back().wavelength; }

  /// Complex index n - i k (loss as a negative imaginary part), linearly
  /// interpolated in n and k separately. Out-of-range wavelengths throw.
  Complex index(double wavelength) const;

 private:
  std::vector<Row> rows_;
};

/// Parses "wavelength_nm n k" rows; '#' lines and blank lines are skipped.
DispersionTable load_dispersion(std::istream& in);
DispersionTable load_dispersion(const std::filesystem::path& path);

inline Complex interpolate(const DispersionTable& table, double wavelength) {
  return table.index(wavelength);
}

}  // namespace pbholo
