#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "pbholo/phase.hpp"

namespace pbholo {

/// One nanobeam: centre, in-plane angle (long axis from +x), dimensions. Meters.
struct Beam {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // [-pi/2, pi/2)
  double width = 0.0;
  double length = 0.0;

  bool operator==(const Beam&) const = default;
};

/// Beams on a square lattice of unit cells, row-major (row along y).
struct NanobeamLayout {
  double unit_cell = 230e-9;
  double aperture = 0.0;          // side of the square phase aperture
  std::size_t cells_per_side = 0;
  std::vector<Beam> beams;

  bool operator==(const NanobeamLayout&) const = default;
};

enum class ClipPolicy {
  Strict,  // beams that could leave their cell at some angle are rejected
  Clip,    // beam length shortened per angle until it fits
};

/// theta = wrap(phi) / 2.
double beam_angle(double phase);

/// One beam per unit cell; the angle comes from the phase sample nearest the
/// cell centre. Rejects continuous maps and, under Strict, oversize beams.
NanobeamLayout generate_layout(const PhaseMap& phase, double unit_cell = 230e-9,
                               double beam_width = 70e-9, double beam_length = 180e-9,
                               ClipPolicy policy = ClipPolicy::Strict);

enum class LayoutFormat { Json, Csv, Svg };
LayoutFormat parse_layout_format(std::string_view name);

struct ExportOptions {
  std::size_t svg_decimation = 1;  // keep every k-th cell along each axis
};

void export_layout(std::ostream& out, const NanobeamLayout& layout, LayoutFormat format,
                   const ExportOptions& options = {});
void export_layout(const std::filesystem::path& path, const NanobeamLayout& layout,
                   LayoutFormat format, const ExportOptions& options = {});

NanobeamLayout import_layout_json(std::istream& in);
NanobeamLayout import_layout_json(const std::filesystem::path& path);

}  // namespace pbholo
