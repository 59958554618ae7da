#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pbholo/field.hpp"
#include "pbholo/geometry.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {

/// Phase of one display cell, sampled on the global aperture lattice
/// (pitch = aperture / n). `row0`, `col0` locate the block inside that lattice.
struct CellPhase {
  PhaseMap map;
  std::size_t row0 = 0;
  std::size_t col0 = 0;
};

/// Unwrapped phase of a spherical wave diverging from the virtual point
/// (X, Y, -d) seen at (x, y): k (sqrt(rho^2 + d^2) - d).
double virtual_point_phase(double x, double y, double px, double py, double distance,
                           double wavelength);

/// Coarsest lattice pitch that keeps >= 4 samples per 2 pi phase ramp inside
/// cell (i, j).
double required_cell_pitch(std::size_t i, std::size_t j, const SystemGeometry& geom);

/// Analytic virtual-point phase for display cell (i, j) on an n x n aperture
/// lattice. The virtual point sits at (Mag * x_c, Mag * y_c, -d_c), so an
/// observer sees the cell as conjugate pixel (i, j), upright.
/// Throws SamplingError when the lattice pitch under-resolves the ramp.
CellPhase cell_phase(std::size_t i, std::size_t j, const SystemGeometry& geom, std::size_t n);

/// Forward/backward transform pair linking the aperture and image planes.
struct Propagator {
  std::function<ComplexField(const ComplexField&)> forward;
  std::function<ComplexField(const ComplexField&)> backward;
};

/// Unitary centred FFT pair (far-field / Fraunhofer propagation).
Propagator fraunhofer_propagator();

struct GsOptions {
  int iterations = 50;
  std::uint64_t seed = 1;
};

struct GsResult {
  PhaseMap phase;
  /// Normalized image-domain error || |G_k| - T || / || T || of the aperture
  /// phase after each round, power-matched target. Non-increasing.
  std::vector<double> errors;
};

/// Gerchberg-Saxton phase retrieval with a uniform unit aperture amplitude.
/// `target` supplies the desired image-plane magnitude (its phase is ignored).
GsResult gs_retrieve(const ComplexField& target, const Propagator& propagator,
                     const GsOptions& options = {});

enum class DesignMode { PerCell, FullGs };

struct AssembleOptions {
  GsOptions gs{};
  /// Pixels the full_gs target should contain; all pixels when empty.
  std::optional<DisplayPattern> target;
};

/// Far-field target for full_gs mode: one unit sample per lit pixel at the
/// spatial frequency that points from the pixel's virtual image point,
/// u = -Mag * x_c / (lambda * d_c).
ComplexField lattice_target(const SystemGeometry& geom, std::size_t n,
                            const DisplayPattern& pattern);

/// Full-aperture phase map on an n x n lattice. `levels` > 0 quantizes.
PhaseMap assemble_hologram(const SystemGeometry& geom, DesignMode mode, std::size_t n,
                           int levels, const AssembleOptions& options = {});

}  // namespace pbholo
