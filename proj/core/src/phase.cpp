#include "pbholo/phase.hpp"

#include <cmath>
#include <string>

#include "pbholo/error.hpp"

namespace pbholo {

double wrap_phase(double x) {
  if (!std::isfinite(x)) {
    throw InputError("wrap_phase: non-finite input");
  }
  double r = std::fmod(x + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift back for inputs just below an
  // odd multiple of pi.
  if (r >= kPi) r -= kTwoPi;
  return r;
}

PhaseMap::PhaseMap(std::size_t rows, std::size_t cols, double pitch, int levels)
    : PhaseMap(rows, cols, pitch, std::vector<double>(rows * cols, levels > 0 ? -kPi : 0.0),
               levels) {}

PhaseMap::PhaseMap(std::size_t rows, std::size_t cols, double pitch, std::vector<double> values,
                   int levels)
    : rows_(rows), cols_(cols), pitch_(pitch), levels_(levels), values_(std::move(values)) {
  if (rows == 0 || cols == 0) throw InputError("PhaseMap: empty grid");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw InputError("PhaseMap: pitch must be > 0");
  if (levels < 0 || levels == 1) throw InputError("PhaseMap: levels must be 0 or >= 2");
  if (values_.size() != rows * cols) throw InputError("PhaseMap: value count does not match grid");
}

void PhaseMap::validate() const {
  const double step = levels_ > 0 ? kTwoPi / levels_ : 0.0;
  for (double v : values_) {
    if (!(v >= -kPi && v < kPi)) {
      throw InputError("PhaseMap: value " + std::to_string(v) + " outside [-pi, pi)");
    }
    if (levels_ > 0) {
      const double k = (v + kPi) / step;
      if (std::abs(k - std::round(k)) > 1e-9) {
        throw InputError("PhaseMap: value " + std::to_string(v) + " is not a quantization level");
      }
    }
  }
}

double quantize_value(double phase, int levels) {
  if (levels < 2) throw InputError("quantize_phase: level count must be >= 2");
  const double step = kTwoPi / levels;
  const double s = (wrap_phase(phase) + kPi) / step;
  // ceil(s - 1/2) rounds to nearest with exact halves going down.
  auto k = static_cast<long>(std::ceil(s - 0.5));
  k %= levels;
  return -kPi + static_cast<double>(k) * step;
}

PhaseMap quantize_phase(const PhaseMap& map, int levels) {
  if (levels < 2) throw InputError("quantize_phase: level count must be >= 2");
  std::vector<double> out(map.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = quantize_value(map.values()[i], levels);
  }
  return PhaseMap(map.rows(), map.cols(), map.pitch(), std::move(out), levels);
}

}  // namespace pbholo
