#include "pbholo/dispersion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pbholo/error.hpp"

namespace pbholo {

DispersionTable::DispersionTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw InputError("dispersion table needs at least 2 rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    if (!(r.wavelength > 0.0) || !(r.n > 0.0) || !(r.k >= 0.0) || !std::isfinite(r.n) ||
        !std::isfinite(r.k)) {
      throw InputError("dispersion table row " + std::to_string(i) +
                       ": require wavelength > 0, n > 0, k >= 0");
    }
    if (i > 0 && !(r.wavelength > rows_[i - 1].wavelength)) {
      throw InputError("dispersion table: wavelengths must be strictly increasing (row " +
                       std::to_string(i) + ")");
    }
  }
}

Complex DispersionTable::index(double wavelength) const {
  if (rows_.empty()) throw InputError("dispersion table is empty");
  if (!(wavelength >= min_wavelength() && wavelength <= max_wavelength())) {
    throw InputError("wavelength " + std::to_string(wavelength * 1e9) +
                     " nm outside dispersion table range [" + std::to_string(min_wavelength() * 1e9) +
                     ", " + std::to_string(max_wavelength() * 1e9) + "] nm");
  }
  std::size_t hi = 1;
  while (hi < rows_.size() - 1 && rows_[hi].wavelength < wavelength) ++hi;
  const Row& a = rows_[hi - 1];
  const Row& b = rows_[hi];
  if (wavelength == a.wavelength) return {a.n, -a.k};
  if (wavelength == b.wavelength) return {b.n, -b.k};
  const double s = (wavelength - a.wavelength) / (b.wavelength - a.wavelength);
  return {a.n + s * (b.n - a.n), -(a.k + s * (b.k - a.k))};
}

DispersionTable load_dispersion(std::istream& in) {
  std::vector<DispersionTable::Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double wl_nm = 0, n = 0, k = 0;
    std::string extra;
    if (!(fields >> wl_nm >> n >> k) || (fields >> extra)) {
      throw InputError("dispersion table line " + std::to_string(line_no) +
                       ": expected 'wavelength_nm n k'");
    }
    rows.push_back({wl_nm / 1e9, n, k});
  }
  return DispersionTable(std::move(rows));
}

DispersionTable load_dispersion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dispersion table " + path.string());
  return load_dispersion(in);
}

}  // namespace pbholo
