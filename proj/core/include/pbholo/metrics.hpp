#pragma once

#include <cstddef>
#include <vector>

#include "pbholo/eye.hpp"
#include "pbholo/geometry.hpp"

namespace pbholo {

/// Where display pixel (i, j) should land on an image plane. On the retina the
/// thin-lens chief ray gives an inverted copy scaled by d_retina / d_c.
struct TargetLattice {
  SystemGeometry geom;
  ImagePlane plane = ImagePlane::Retina;
  double retina_distance = 0.025;

  double scale() const;  // signed plane coordinate per metasurface coordinate
  double center_x(std::size_t j) const { return scale() * geom.cell_center_x(j); }
  double center_y(std::size_t i) const { return scale() * geom.cell_center_y(i); }
  double cell_width() const;
  double cell_height() const;
};

/// Energy (intensity * pitch^2) inside each target cell, row-major pixel order.
std::vector<double> cell_energies(const RetinaImage& image, const TargetLattice& lattice);

/// Energy-weighted centroid of the intensity inside target cell (i, j).
struct Point {
  double x = 0.0;
  double y = 0.0;
};
Point cell_centroid(const RetinaImage& image, const TargetLattice& lattice, std::size_t i,
                    std::size_t j);

/// Largest intensity sample inside target cell (i, j).
double cell_peak(const RetinaImage& image, const TargetLattice& lattice, std::size_t i,
                 std::size_t j);

/// Energy inside an axis-aligned square of side `side` centred on (cx, cy).
double box_energy(const RetinaImage& image, double cx, double cy, double side);

struct Peak {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Samples that are the strict maximum of their (2r+1)^2 neighbourhood and at
/// least `relative_threshold` of the global maximum. Sorted by value, descending.
std::vector<Peak> find_dominant_maxima(const RetinaImage& image, std::size_t radius,
                                       double relative_threshold);

struct DisplayMetrics {
  std::vector<double> cell_fraction;  // energy in each target cell / total image energy
  std::vector<bool> identified;       // cell energy >= threshold * max cell energy
  double contrast = 0.0;              // mean lit-cell energy / mean unlit-cell energy
  double zeroth_order_fraction = 0.0;
  double total_power = 0.0;
};

/// Per-cell bookkeeping for a rendered display. `expected` supplies which
/// cells are lit for the contrast figure.
DisplayMetrics display_metrics(const RetinaImage& image, const TargetLattice& lattice,
                               const DisplayPattern& expected, double lit_threshold = 0.25);

}  // namespace pbholo
