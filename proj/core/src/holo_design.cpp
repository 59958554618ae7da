#include "pbholo/holo_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pbholo/error.hpp"
#include "pbholo/fft.hpp"

namespace pbholo {
namespace {

// Samples c of an n-point lattice over the aperture whose centres fall in
// cell `index` of `count`.
std::pair<std::size_t, std::size_t> cell_sample_range(std::size_t index, std::size_t count,
                                                      double aperture, std::size_t n) {
  const double pitch = aperture / static_cast<double>(n);
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const double x = (static_cast<double>(c) - static_cast<double>(n / 2)) * pitch;
    if (cell_index(x, aperture, count) == index) {
      first = std::min(first, c);
      last = c;
    }
  }
  if (first == n) {
    throw InputError("cell " + std::to_string(index) + " holds no lattice samples; grid too coarse");
  }
  return {first, last + 1 - first};
}

void check_tiling(const SystemGeometry& geom, std::size_t n) {
  geom.validate();
  if (n < 2 || n % 2 != 0) throw InputError("hologram lattice size must be even and >= 2");
  const double pitch = geom.aperture / static_cast<double>(n);
  if (geom.pixel_size > 0.0) {
    const double span_x = geom.pixel_size * static_cast<double>(geom.pixel_cols);
    const double span_y = geom.pixel_size * static_cast<double>(geom.pixel_rows);
    if (std::abs(span_x - geom.aperture) > pitch || std::abs(span_y - geom.aperture) > pitch) {
      std::ostringstream msg;
      msg << "display pixels (" << geom.pixel_rows << " x " << geom.pixel_cols << " at "
          << geom.pixel_size << " m) do not tile the " << geom.aperture << " m aperture";
      throw InputError(msg.str());
    }
  }
  if (geom.cell_width() < pitch || geom.cell_height() < pitch) {
    throw InputError("display cells are smaller than one lattice sample");
  }
}

}  // namespace

double virtual_point_phase(double x, double y, double px, double py, double distance,
                           double wavelength) {
  const double rho2 = (x - px) * (x - px) + (y - py) * (y - py);
  // R - d written as rho^2 / (R + d) to avoid cancellation at large d.
  const double path = rho2 / (std::sqrt(rho2 + distance * distance) + distance);
  return kTwoPi / wavelength * path;
}

double required_cell_pitch(std::size_t i, std::size_t j, const SystemGeometry& geom) {
  const double xc = geom.cell_center_x(j);
  const double yc = geom.cell_center_y(i);
  const double px = geom.magnification * xc;
  const double py = geom.magnification * yc;
  const double hx = 0.5 * geom.cell_width();
  const double hy = 0.5 * geom.cell_height();
  const double d = geom.conjugate_distance;

  // |d phi / dx| = k |x - X| / R is largest at max |x - X| and min |y - Y|.
  auto axis_extremes = [](double lo, double hi, double p) {
    const double far = std::max(std::abs(lo - p), std::abs(hi - p));
    const double near = (p >= lo && p <= hi) ? 0.0 : std::min(std::abs(lo - p), std::abs(hi - p));
    return std::pair{far, near};
  };
  const auto [fx, nx] = axis_extremes(xc - hx, xc + hx, px);
  const auto [fy, ny] = axis_extremes(yc - hy, yc + hy, py);
  const double sin_x = fx / std::sqrt(fx * fx + ny * ny + d * d);
  const double sin_y = fy / std::sqrt(fy * fy + nx * nx + d * d);
  const double s = std::max(sin_x, sin_y);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  // Ramp period lambda / sin; four samples per period.
  return geom.wavelength / s / 4.0;
}

CellPhase cell_phase(std::size_t i, std::size_t j, const SystemGeometry& geom, std::size_t n) {
  check_tiling(geom, n);
  if (i >= geom.pixel_rows || j >= geom.pixel_cols) throw InputError("cell_phase: cell out of range");
  const double pitch = geom.aperture / static_cast<double>(n);
  const double needed = required_cell_pitch(i, j, geom);
  if (pitch > needed) {
    std::ostringstream msg;
    msg << "cell (" << i << ", " << j << "): pitch " << pitch << " m under-resolves the phase ramp;"
        << " required pitch <= " << needed << " m";
    throw SamplingError(msg.str(), needed);
  }

  const auto [row0, rows] = cell_sample_range(i, geom.pixel_rows, geom.aperture, n);
  const auto [col0, cols] = cell_sample_range(j, geom.pixel_cols, geom.aperture, n);
  const double px = geom.magnification * geom.cell_center_x(j);
  const double py = geom.magnification * geom.cell_center_y(i);

  CellPhase out{PhaseMap(rows, cols, pitch), row0, col0};
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = (static_cast<double>(row0 + r) - static_cast<double>(n / 2)) * pitch;
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = (static_cast<double>(col0 + c) - static_cast<double>(n / 2)) * pitch;
      out.map(r, c) = wrap_phase(
          virtual_point_phase(x, y, px, py, geom.conjugate_distance, geom.wavelength));
    }
  }
  return out;
}

Propagator fraunhofer_propagator() {
  auto make = [](FftDirection dir) {
    return [dir](const ComplexField& in) {
      ComplexField out = in;
      fft2_unitary(out.samples(), out.size(), dir);
      return out;
    };
  };
  return {make(FftDirection::Forward), make(FftDirection::Backward)};
}

GsResult gs_retrieve(const ComplexField& target, const Propagator& propagator,
                     const GsOptions& options) {
  if (options.iterations < 1) throw InputError("gs_retrieve: need at least one iteration");
  if (!propagator.forward || !propagator.backward) {
    throw InputError("gs_retrieve: propagator pair is incomplete");
  }
  const std::size_t n = target.size();
  const std::size_t count = n * n;

  std::vector<double> amp(count);
  double target_power = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    amp[i] = std::abs(target.samples()[i]);
    if (!std::isfinite(amp[i])) throw InputError("gs_retrieve: non-finite target");
    target_power += amp[i] * amp[i];
  }
  if (!(target_power > 0.0)) throw InputError("gs_retrieve: target has zero power");
  // Unit aperture amplitude carries power n^2 in sample units; a unitary
  // propagator preserves it, so match the target to that.
  const double scale = std::sqrt(static_cast<double>(count) / target_power);
  double norm_t = 0.0;
  for (double& a : amp) {
    a *= scale;
    norm_t += a * a;
  }
  norm_t = std::sqrt(norm_t);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-kPi, kPi);
  std::vector<double> phase(count);
  for (double& p : phase) p = uniform(rng);

  ComplexField aperture(n, target.pitch(), target.wavelength());
  auto set_aperture = [&] {
    auto s = aperture.samples();
    for (std::size_t i = 0; i < count; ++i) s[i] = std::polar(1.0, phase[i]);
  };
  auto image_error = [&](const ComplexField& image) {
    double e = 0.0;
    auto s = image.samples();
    for (std::size_t i = 0; i < count; ++i) {
      const double d = std::abs(s[i]) - amp[i];
      e += d * d;
    }
    return std::sqrt(e) / norm_t;
  };

  set_aperture();
  ComplexField image = propagator.forward(aperture);
  GsResult result;
  result.errors.reserve(static_cast<std::size_t>(options.iterations));
  for (int it = 0; it < options.iterations; ++it) {
    auto s = image.samples();
    for (std::size_t i = 0; i < count; ++i) {
      const double mag = std::abs(s[i]);
      s[i] = mag > 0.0 ? s[i] * (amp[i] / mag) : Complex(amp[i], 0.0);
    }
    const ComplexField back = propagator.backward(image);
    if (back.size() != n) throw InputError("gs_retrieve: propagator changed the grid size");
    auto b = back.samples();
    for (std::size_t i = 0; i < count; ++i) {
      phase[i] = std::abs(b[i]) > 0.0 ? std::arg(b[i]) : phase[i];
    }
    set_aperture();
    image = propagator.forward(aperture);
    const double err = image_error(image);
    if (!std::isfinite(err)) throw NumericalError("gs_retrieve: non-finite image error");
    result.errors.push_back(err);
  }

  for (double& p : phase) p = wrap_phase(p);
  result.phase = PhaseMap(n, n, target.pitch(), std::move(phase));
  return result;
}

ComplexField lattice_target(const SystemGeometry& geom, std::size_t n,
                            const DisplayPattern& pattern) {
  if (pattern.rows() != geom.pixel_rows || pattern.cols() != geom.pixel_cols) {
    throw InputError("lattice_target: pattern does not match the display grid");
  }
  ComplexField target(n, geom.aperture / static_cast<double>(n), geom.wavelength);
  const double scale = geom.aperture / (geom.wavelength * geom.conjugate_distance);
  const auto half = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < pattern.rows(); ++i) {
    for (std::size_t j = 0; j < pattern.cols(); ++j) {
      if (!pattern.lit(i, j)) continue;
      const long bx = std::lround(-geom.magnification * geom.cell_center_x(j) * scale);
      const long by = std::lround(-geom.magnification * geom.cell_center_y(i) * scale);
      if (std::labs(bx) >= half || std::labs(by) >= half) {
        throw InputError("lattice_target: conjugate image exceeds the far-field window");
      }
      target(static_cast<std::size_t>(by + half), static_cast<std::size_t>(bx + half)) = 1.0;
    }
  }
  return target;
}

PhaseMap assemble_hologram(const SystemGeometry& geom, DesignMode mode, std::size_t n, int levels,
                           const AssembleOptions& options) {
  check_tiling(geom, n);
  const double pitch = geom.aperture / static_cast<double>(n);
  PhaseMap map(n, n, pitch);

  if (mode == DesignMode::PerCell) {
    for (std::size_t i = 0; i < geom.pixel_rows; ++i) {
      for (std::size_t j = 0; j < geom.pixel_cols; ++j) {
        const CellPhase cell = cell_phase(i, j, geom, n);
        for (std::size_t r = 0; r < cell.map.rows(); ++r) {
          for (std::size_t c = 0; c < cell.map.cols(); ++c) {
            map(cell.row0 + r, cell.col0 + c) = cell.map(r, c);
          }
        }
      }
    }
  } else {
    const DisplayPattern pattern =
        options.target ? *options.target : DisplayPattern(geom.pixel_rows, geom.pixel_cols, true);
    const GsResult gs = gs_retrieve(lattice_target(geom, n, pattern), fraunhofer_propagator(),
                                    options.gs);
    // The far-field design is re-centred on the conjugate plane by the
    // diverging wave from the axial virtual point.
    for (std::size_t r = 0; r < n; ++r) {
      const double y = map.y(r);
      for (std::size_t c = 0; c < n; ++c) {
        const double x = map.x(c);
        map(r, c) = wrap_phase(gs.phase(r, c) + virtual_point_phase(x, y, 0.0, 0.0,
                                                                    geom.conjugate_distance,
                                                                    geom.wavelength));
      }
    }
  }
  return levels > 0 ? quantize_phase(map, levels) : map;
}

}  // namespace pbholo
