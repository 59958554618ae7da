#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pbholo/geometry.hpp"
#include "pbholo/pb_element.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {

/// Thin-lens eye: lens at the metasurface plane, detector at `retina_distance`.
struct EyeGeometry {
  double focal_length = 0.017;
  double retina_distance = 0.025;
  /// Overrides focal_length when set (the accommodation state).
  std::optional<double> accommodation;

  double effective_focal_length() const { return accommodation.value_or(focal_length); }
  void validate() const;

  /// Focal length that images a plane `object_distance` away onto the retina.
  double focused_on(double object_distance) const {
    return 1.0 / (1.0 / object_distance + 1.0 / retina_distance);
  }
};

enum class ImagePlane { Retina, Conjugate };
enum class Emission { Incoherent, Coherent };

/// Intensity on an n x n grid centred on the axis, row-major, same sample
/// coordinate convention as ComplexField.
struct RetinaImage {
  std::size_t n = 0;
  double pitch = 0.0;
  ImagePlane plane = ImagePlane::Retina;
  std::vector<double> intensity;
  /// Power carried by the co-polarized (unconverted) channel.
  double zeroth_order_power = 0.0;

  double at(std::size_t r, std::size_t c) const { return intensity[r * n + c]; }
  double x(std::size_t c) const {
    return (static_cast<double>(c) - static_cast<double>(n / 2)) * pitch;
  }
  double y(std::size_t r) const {
    return (static_cast<double>(r) - static_cast<double>(n / 2)) * pitch;
  }
  double total_power() const;
};

struct SimulationOptions {
  double wavelength = 543e-9;
  Helicity input = Helicity::Right;
  /// Cross-polarized analyzer in front of the detector: drops the co-polarized channel.
  bool analyzer = false;
  /// Incoherent: every lit pixel is rendered alone and intensities add.
  Emission emission = Emission::Incoherent;
};

/// Retina-plane intensity for a display pattern behind the metasurface.
/// Each lit pixel illuminates its cell uniformly; the converted channel picks
/// up the PB phase exp(i s phi) (theta = phi / 2), the unconverted channel
/// passes unmodulated. Then thin lens, then Fresnel propagation to the retina.
RetinaImage eye_simulate(const PhaseMap& phase, const DisplayPattern& mask, const EyeGeometry& eye,
                         const PBElement& elem, const SimulationOptions& options = {});

/// Converted-channel intensity back-propagated to the virtual conjugate plane
/// `conjugate_distance` in front of the metasurface.
RetinaImage conjugate_reconstruct(const PhaseMap& phase, const DisplayPattern& mask,
                                  double conjugate_distance, const PBElement& elem,
                                  const SimulationOptions& options = {});

struct AccommodationSweep {
  double best_focal_length = 0.0;
  std::vector<double> focal_lengths;
  std::vector<double> sharpness;
};

/// Evaluates sharpness for `steps` focal lengths spanning [f_min, f_max]: the
/// energy inside a square of side lambda * d_retina / cell centred on every lit
/// target site, divided by total energy. Each step renders the display coherently.
AccommodationSweep accommodation_sweep(const PhaseMap& phase, const DisplayPattern& mask,
                                       const EyeGeometry& eye, const PBElement& elem,
                                       const SystemGeometry& geom, double f_min, double f_max,
                                       int steps, const SimulationOptions& options = {});

}  // namespace pbholo
