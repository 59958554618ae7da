#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pbholo {

using Complex = std::complex<double>;

/// Sampled scalar optical amplitude on a square, even-sized grid.
///
/// Sample (r, c) sits at x = origin_x + (c - n/2) * pitch and
/// y = origin_y + (r - n/2) * pitch, so index n/2 is the grid centre.
class ComplexField {
 public:
  ComplexField(std::size_t n, double pitch, double wavelength, double origin_x = 0.0,
               double origin_y = 0.0);

  std::size_t size() const noexcept { return n_; }
  double pitch() const noexcept { return pitch_; }
  double wavelength() const noexcept { return wavelength_; }
  double origin_x() const noexcept { return origin_x_; }
  double origin_y() const noexcept { return origin_y_; }
  double extent() const noexcept { return static_cast<double>(n_) * pitch_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  std::span<Complex> samples() noexcept { return data_; }
  std::span<const Complex> samples() const noexcept { return data_; }

  double x(std::size_t c) const noexcept {
    return origin_x_ + (static_cast<double>(c) - static_cast<double>(n_ / 2)) * pitch_;
  }
  double y(std::size_t r) const noexcept {
    return origin_y_ + (static_cast<double>(r) - static_cast<double>(n_ / 2)) * pitch_;
  }

  /// Sum |u|^2 * pitch^2.
  double power() const;

  /// Same grid, all samples zero.
  ComplexField zeros_like() const;

 private:
  std::size_t n_;
  double pitch_;
  double wavelength_;
  double origin_x_;
  double origin_y_;
  std::vector<Complex> data_;
};

/// Largest |a - b| over all samples; grids must match in size.
double max_abs_difference(const ComplexField& a, const ComplexField& b);

}  // namespace pbholo
