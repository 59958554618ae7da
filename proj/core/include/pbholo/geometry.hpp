#pragma once

#include <cstddef>
#include <vector>

namespace pbholo {

/// Which display pixels emit. Row i runs along y, column j along x; the grid
/// is centred on the metasurface aperture.
class DisplayPattern {
 public:
  DisplayPattern() = default;
  DisplayPattern(std::size_t rows, std::size_t cols, bool lit = false);
  DisplayPattern(std::size_t rows, std::size_t cols, std::vector<bool> mask);

  static DisplayPattern single(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool lit(std::size_t i, std::size_t j) const { return mask_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool on) { mask_[i * cols_ + j] = on; }
  std::size_t lit_count() const;

  bool operator==(const DisplayPattern&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<bool> mask_;
};

/// Metasurface, display and conjugate-plane layout. Defaults: 500 um aperture,
/// 10 x 10 display pixels, virtual image 0.25 m away magnified 100x, 543 nm.
struct SystemGeometry {
  double aperture = 500e-6;
  std::size_t pixel_rows = 10;
  std::size_t pixel_cols = 10;
  double conjugate_distance = 0.25;
  double magnification = 100.0;
  double wavelength = 543e-9;
  /// Display pixel pitch; 0 derives it from aperture / pixel count.
  double pixel_size = 0.0;

  double cell_width() const { return aperture / static_cast<double>(pixel_cols); }
  double cell_height() const { return aperture / static_cast<double>(pixel_rows); }
  /// Centre of display pixel (i, j) on the metasurface.
  double cell_center_x(std::size_t j) const;
  double cell_center_y(std::size_t i) const;

  /// Throws InputError on non-positive lengths or an empty pixel grid.
  void validate() const;

  /// Same geometry with the pixel grid taken from a pattern.
  SystemGeometry with_pixels(const DisplayPattern& pattern) const;
};

/// Index of the display cell holding physical coordinate `pos` along an axis
/// of `count` cells spanning `aperture`, clamped into [0, count).
std::size_t cell_index(double pos, double aperture, std::size_t count);

}  // namespace pbholo
