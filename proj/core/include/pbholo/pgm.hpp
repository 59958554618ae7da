#pragma once

#include <filesystem>
#include <istream>

#include "pbholo/eye.hpp"
#include "pbholo/geometry.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {

/// 16-bit binary PGM (P5, big-endian). Sample v stores phase -pi + v * 2pi / 65536.
/// A sidecar "<path>.txt" records pitch_m, levels and wavelength_m.
void write_phase_pgm(const std::filesystem::path& path, const PhaseMap& phase, double wavelength);

struct PhaseFile {
  PhaseMap phase;
  double wavelength = 0.0;
};
/// Reads a phase PGM and its sidecar. Quantized maps come back on exact levels.
PhaseFile read_phase_pgm(const std::filesystem::path& path);

/// Intensity normalised to the image maximum, 16-bit P5, plus a sidecar with
/// pitch_m, plane and total_power.
void write_intensity_pgm(const std::filesystem::path& path, const RetinaImage& image);

/// Display pattern from an ASCII grid of '0'/'1' (one row per line, '#'
/// comments) or from an 8-bit PGM (P2 or P5) thresholded at 128.
DisplayPattern read_pattern(std::istream& in);
DisplayPattern read_pattern(const std::filesystem::path& path);

}  // namespace pbholo
