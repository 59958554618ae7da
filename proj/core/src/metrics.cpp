#include "pbholo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbholo/error.hpp"

namespace pbholo {
namespace {

// Pixel index range [lo, hi) whose centres satisfy a <= coord < b.
std::pair<std::size_t, std::size_t> index_span(const RetinaImage& img, double a, double b) {
  const double half = static_cast<double>(img.n / 2);
  const double lo = std::ceil(a / img.pitch + half);
  const double hi = std::ceil(b / img.pitch + half);
  const auto clamp = [&](double v) {
    return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(img.n)));
  };
  return {clamp(lo), clamp(hi)};
}

}  // namespace

double TargetLattice::scale() const {
  if (plane == ImagePlane::Conjugate) return geom.magnification;
  return -geom.magnification * retina_distance / geom.conjugate_distance;
}

double TargetLattice::cell_width() const { return std::abs(scale()) * geom.cell_width(); }
double TargetLattice::cell_height() const { return std::abs(scale()) * geom.cell_height(); }

std::vector<double> cell_energies(const RetinaImage& image, const TargetLattice& lattice) {
  const auto& g = lattice.geom;
  std::vector<double> out(g.pixel_rows * g.pixel_cols, 0.0);
  const double area = image.pitch * image.pitch;
  const double hw = 0.5 * lattice.cell_width();
  const double hh = 0.5 * lattice.cell_height();
  for (std::size_t i = 0; i < g.pixel_rows; ++i) {
    const double cy = lattice.center_y(i);
    const auto [r0, r1] = index_span(image, cy - hh, cy + hh);
    for (std::size_t j = 0; j < g.pixel_cols; ++j) {
      const double cx = lattice.center_x(j);
      const auto [c0, c1] = index_span(image, cx - hw, cx + hw);
      double e = 0.0;
      for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) e += image.at(r, c);
      }
      out[i * g.pixel_cols + j] = e * area;
    }
  }
  return out;
}

Point cell_centroid(const RetinaImage& image, const TargetLattice& lattice, std::size_t i,
                    std::size_t j) {
  const double cx = lattice.center_x(j);
  const double cy = lattice.center_y(i);
  const double hw = 0.5 * lattice.cell_width();
  const double hh = 0.5 * lattice.cell_height();
  const auto [r0, r1] = index_span(image, cy - hh, cy + hh);
  const auto [c0, c1] = index_span(image, cx - hw, cx + hw);
  double sum = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t r = r0; r < r1; ++r) {
    for (std::size_t c = c0; c < c1; ++c) {
      const double v = image.at(r, c);
      sum += v;
      sx += v * image.x(c);
      sy += v * image.y(r);
    }
  }
  if (!(sum > 0.0)) return {cx, cy};
  return {sx / sum, sy / sum};
}

double cell_peak(const RetinaImage& image, const TargetLattice& lattice, std::size_t i,
                 std::size_t j) {
  const double cx = lattice.center_x(j);
  const double cy = lattice.center_y(i);
  const auto [r0, r1] = index_span(image, cy - 0.5 * lattice.cell_height(),
                                   cy + 0.5 * lattice.cell_height());
  const auto [c0, c1] = index_span(image, cx - 0.5 * lattice.cell_width(),
                                   cx + 0.5 * lattice.cell_width());
  double peak = 0.0;
  for (std::size_t r = r0; r < r1; ++r) {
    for (std::size_t c = c0; c < c1; ++c) peak = std::max(peak, image.at(r, c));
  }
  return peak;
}

double box_energy(const RetinaImage& image, double cx, double cy, double side) {
  const auto [r0, r1] = index_span(image, cy - 0.5 * side, cy + 0.5 * side);
  const auto [c0, c1] = index_span(image, cx - 0.5 * side, cx + 0.5 * side);
  double e = 0.0;
  for (std::size_t r = r0; r < r1; ++r) {
    for (std::size_t c = c0; c < c1; ++c) e += image.at(r, c);
  }
  return e * image.pitch * image.pitch;
}

std::vector<Peak> find_dominant_maxima(const RetinaImage& image, std::size_t radius,
                                       double relative_threshold) {
  const std::size_t n = image.n;
  const double global = *std::max_element(image.intensity.begin(), image.intensity.end());
  const double floor_value = relative_threshold * global;
  std::vector<Peak> peaks;
  if (!(global > 0.0)) return peaks;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = image.at(r, c);
      if (v < floor_value) continue;
      bool is_max = true;
      const std::size_t ra = r >= radius ? r - radius : 0;
      const std::size_t rb = std::min(n - 1, r + radius);
      const std::size_t ca = c >= radius ? c - radius : 0;
      const std::size_t cb = std::min(n - 1, c + radius);
      for (std::size_t rr = ra; rr <= rb && is_max; ++rr) {
        for (std::size_t cc = ca; cc <= cb; ++cc) {
          if (rr == r && cc == c) continue;
          const double w = image.at(rr, cc);
          // Plateaus resolve to their first sample in raster order.
          if (w > v || (w == v && (rr < r || (rr == r && cc < c)))) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) peaks.push_back({r, c, v});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.value > b.value;
  });
  return peaks;
}

DisplayMetrics display_metrics(const RetinaImage& image, const TargetLattice& lattice,
                               const DisplayPattern& expected, double lit_threshold) {
  const auto& g = lattice.geom;
  if (expected.rows() != g.pixel_rows || expected.cols() != g.pixel_cols) {
    throw InputError("display_metrics: pattern does not match the target lattice");
  }
  DisplayMetrics m;
  m.total_power = image.total_power();
  const std::vector<double> energy = cell_energies(image, lattice);
  const double max_e = *std::max_element(energy.begin(), energy.end());
  m.cell_fraction.resize(energy.size());
  m.identified.resize(energy.size());
  double lit_sum = 0.0, unlit_sum = 0.0;
  std::size_t lit_n = 0, unlit_n = 0;
  for (std::size_t k = 0; k < energy.size(); ++k) {
    m.cell_fraction[k] = m.total_power > 0.0 ? energy[k] / m.total_power : 0.0;
    m.identified[k] = max_e > 0.0 && energy[k] >= lit_threshold * max_e;
    if (expected.lit(k / g.pixel_cols, k % g.pixel_cols)) {
      lit_sum += energy[k];
      ++lit_n;
    } else {
      unlit_sum += energy[k];
      ++unlit_n;
    }
  }
  const double lit_mean = lit_n ? lit_sum / static_cast<double>(lit_n) : 0.0;
  const double unlit_mean = unlit_n ? unlit_sum / static_cast<double>(unlit_n) : 0.0;
  m.contrast = unlit_mean > 0.0 ? lit_mean / unlit_mean : std::numeric_limits<double>::infinity();
  m.zeroth_order_fraction = m.total_power > 0.0 ? image.zeroth_order_power / m.total_power : 0.0;
  return m;
}

}  // namespace pbholo
