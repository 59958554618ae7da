#include "pbholo/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "pbholo/error.hpp"

namespace pbholo {

DisplayPattern::DisplayPattern(std::size_t rows, std::size_t cols, bool lit)
    : DisplayPattern(rows, cols, std::vector<bool>(rows * cols, lit)) {}

DisplayPattern::DisplayPattern(std::size_t rows, std::size_t cols, std::vector<bool> mask)
    : rows_(rows), cols_(cols), mask_(std::move(mask)) {
  if (rows == 0 || cols == 0) throw InputError("DisplayPattern: need at least one pixel");
  if (mask_.size() != rows * cols) throw InputError("DisplayPattern: mask size mismatch");
}

DisplayPattern DisplayPattern::single(std::size_t rows, std::size_t cols, std::size_t i,
                                      std::size_t j) {
  DisplayPattern p(rows, cols, false);
  if (i >= rows || j >= cols) throw InputError("DisplayPattern::single: pixel out of range");
  p.set(i, j, true);
  return p;
}

std::size_t DisplayPattern::lit_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

double SystemGeometry::cell_center_x(std::size_t j) const {
  return -0.5 * aperture + (static_cast<double>(j) + 0.5) * cell_width();
}

double SystemGeometry::cell_center_y(std::size_t i) const {
  return -0.5 * aperture + (static_cast<double>(i) + 0.5) * cell_height();
}

void SystemGeometry::validate() const {
  if (!(aperture > 0.0)) throw InputError("geometry: aperture must be > 0");
  if (pixel_rows == 0 || pixel_cols == 0) throw InputError("geometry: pixel grid is empty");
  if (!(conjugate_distance > 0.0)) throw InputError("geometry: conjugate distance must be > 0");
  if (!(magnification > 0.0)) throw InputError("geometry: magnification must be > 0");
  if (!(wavelength > 0.0)) throw InputError("geometry: wavelength must be > 0");
}

SystemGeometry SystemGeometry::with_pixels(const DisplayPattern& pattern) const {
  SystemGeometry g = *this;
  g.pixel_rows = pattern.rows();
  g.pixel_cols = pattern.cols();
  return g;
}

std::size_t cell_index(double pos, double aperture, std::size_t count) {
  const double s = (pos + 0.5 * aperture) / aperture * static_cast<double>(count);
  const double f = std::floor(s);
  if (f < 0.0) return 0;
  return std::min(static_cast<std::size_t>(f), count - 1);
}

}  // namespace pbholo
