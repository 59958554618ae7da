#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace pbholo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into the half-open interval [-pi, pi).
/// Throws InputError on non-finite input.
double wrap_phase(double x);

/// Wrapped phase over a rectangular grid, row-major, centred on the optical axis.
///
/// `levels == 0` marks a continuous map. For `levels == L > 0` every value is
/// one of -pi + k * 2pi / L, k in [0, L).
class PhaseMap {
 public:
  PhaseMap() = default;
  PhaseMap(std::size_t rows, std::size_t cols, double pitch, int levels = 0);
  PhaseMap(std::size_t rows, std::size_t cols, double pitch, std::vector<double> values,
           int levels = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double pitch() const noexcept { return pitch_; }
  int levels() const noexcept { return levels_; }
  bool quantized() const noexcept { return levels_ > 0; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  // Physical coordinates of sample centres, grid centred on the origin:
  // x(c) = (c - cols/2) * pitch, matching ComplexField.
  double x(std::size_t c) const noexcept {
    return (static_cast<double>(c) - static_cast<double>(cols_ / 2)) * pitch_;
  }
  double y(std::size_t r) const noexcept {
    return (static_cast<double>(r) - static_cast<double>(rows_ / 2)) * pitch_;
  }

  /// Checks the interval and level invariants; throws InputError on failure.
  void validate() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double pitch_ = 0.0;
  int levels_ = 0;
  std::vector<double> values_;
};

/// Nearest level of {-pi + k * 2pi / L} measured on the phase circle; exact
/// ties go to the lower level.
double quantize_value(double phase, int levels);

/// Quantizes every sample to `levels` levels. Idempotent; max circular error
/// is pi / levels. Throws InputError for levels < 2.
PhaseMap quantize_phase(const PhaseMap& map, int levels);

}  // namespace pbholo
