#include "pbholo/layout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "pbholo/error.hpp"

namespace pbholo {
namespace {

constexpr int kSchemaVersion = 1;

// Longest beam of width w that fits an axis-aligned square cell at angle t.
double fitting_length(double t, double w, double cell) {
  const double c = std::abs(std::cos(t));
  const double s = std::abs(std::sin(t));
  double best = std::numeric_limits<double>::infinity();
  if (c > 0.0) best = std::min(best, (cell - w * s) / c);
  if (s > 0.0) best = std::min(best, (cell - w * c) / s);
  return best;
}

void write_json(std::ostream& out, const NanobeamLayout& layout) {
  using nlohmann::json;
  out << "{\"schema\":\"pbholo.layout\",\"version\":" << kSchemaVersion
      << ",\"unit_cell\":" << json(layout.unit_cell).dump()
      << ",\"aperture\":" << json(layout.aperture).dump()
      << ",\"cells_per_side\":" << layout.cells_per_side << ",\"beams\":[";
  for (std::size_t i = 0; i < layout.beams.size(); ++i) {
    const Beam& b = layout.beams[i];
    const json j = {{"x", b.x}, {"y", b.y}, {"theta", b.theta}, {"width", b.width},
                    {"length", b.length}};
    if (i) out << ',';
    out << '\n' << j.dump();
  }
  out << "\n]}\n";
}

void write_csv(std::ostream& out, const NanobeamLayout& layout) {
  out << "x_nm,y_nm,theta_rad,w_nm,l_nm\n";
  out << std::setprecision(10);
  for (const Beam& b : layout.beams) {
    out << b.x * 1e9 << ',' << b.y * 1e9 << ',' << b.theta << ',' << b.width * 1e9 << ','
        << b.length * 1e9 << '\n';
  }
}

void write_svg(std::ostream& out, const NanobeamLayout& layout, std::size_t decimation) {
  if (decimation == 0) throw InputError("svg decimation must be >= 1");
  const double half = std::max(0.5 * layout.aperture,
                               0.5 * layout.unit_cell * static_cast<double>(layout.cells_per_side));
  const double side = 2.0 * half * 1e9;
  out << std::setprecision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -half * 1e9 << ' '
      << -half * 1e9 << ' ' << side << ' ' << side << "\" width=\"" << side << "\" height=\""
      << side << "\">\n";
  // Flip y so the drawing keeps the physical orientation.
  out << "<g transform=\"scale(1,-1)\" fill=\"black\">\n";
  const std::size_t n = layout.cells_per_side;
  for (std::size_t i = 0; i < layout.beams.size(); ++i) {
    const bool keep = n == 0 || layout.beams.size() != n * n
                          ? i % decimation == 0
                          : (i / n) % decimation == 0 && (i % n) % decimation == 0;
    if (!keep) continue;
    const Beam& b = layout.beams[i];
    const double cx = b.x * 1e9;
    const double cy = b.y * 1e9;
    const double deg = b.theta * 180.0 / kPi;
    out << "<rect x=\"" << cx - 0.5 * b.length * 1e9 << "\" y=\"" << cy - 0.5 * b.width * 1e9
        << "\" width=\"" << b.length * 1e9 << "\" height=\"" << b.width * 1e9
        << "\" transform=\"rotate(" << deg << ' ' << cx << ' ' << cy << ")\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace

double beam_angle(double phase) {
  const double theta = 0.5 * wrap_phase(phase);
  return theta >= 0.5 * kPi ? theta - kPi : theta;
}

NanobeamLayout generate_layout(const PhaseMap& phase, double unit_cell, double beam_width,
                               double beam_length, ClipPolicy policy) {
  if (!phase.quantized()) throw InputError("layout: phase map must be quantized (levels > 0)");
  phase.validate();
  if (phase.rows() != phase.cols()) throw InputError("layout: phase map must be square");
  if (!(unit_cell > 0.0) || !(beam_width > 0.0) || !(beam_length > 0.0)) {
    throw InputError("layout: unit cell and beam dimensions must be > 0");
  }
  if (beam_width > unit_cell) throw InputError("layout: beam wider than the unit cell");
  if (policy == ClipPolicy::Strict && std::hypot(beam_width, beam_length) > unit_cell) {
    std::ostringstream msg;
    msg << "layout: " << beam_width << " x " << beam_length << " m beam can leave its "
        << unit_cell << " m cell when rotated; shrink it or use the clip policy";
    throw InputError(msg.str());
  }

  NanobeamLayout layout;
  layout.unit_cell = unit_cell;
  layout.aperture = static_cast<double>(phase.cols()) * phase.pitch();
  // Small relative slack so that exact multiples are not lost to rounding.
  const auto n = static_cast<std::size_t>(std::floor(layout.aperture / unit_cell * (1.0 + 1e-12)));
  if (n == 0) throw InputError("layout: aperture is smaller than one unit cell");
  layout.cells_per_side = n;
  layout.beams.reserve(n * n);

  const double x0 = -0.5 * static_cast<double>(n) * unit_cell;
  const double half = static_cast<double>(phase.cols() / 2);
  auto sample = [&](double coord) {
    const double idx = std::round(coord / phase.pitch() + half);
    return static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(phase.cols() - 1)));
  };
  std::vector<std::size_t> lookup(n);
  std::vector<double> centre(n);
  for (std::size_t k = 0; k < n; ++k) {
    centre[k] = x0 + (static_cast<double>(k) + 0.5) * unit_cell;
    lookup[k] = sample(centre[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Beam b;
      b.x = centre[j];
      b.y = centre[i];
      b.theta = beam_angle(phase(lookup[i], lookup[j]));
      b.width = beam_width;
      b.length = policy == ClipPolicy::Clip
                     ? std::min(beam_length, fitting_length(b.theta, beam_width, unit_cell))
                     : beam_length;
      layout.beams.push_back(b);
    }
  }
  return layout;
}

LayoutFormat parse_layout_format(std::string_view name) {
  if (name == "json") return LayoutFormat::Json;
  if (name == "csv") return LayoutFormat::Csv;
  if (name == "svg") return LayoutFormat::Svg;
  throw InputError("unknown layout format '" + std::string(name) + "' (json, csv, svg)");
}

void export_layout(std::ostream& out, const NanobeamLayout& layout, LayoutFormat format,
                   const ExportOptions& options) {
  switch (format) {
    case LayoutFormat::Json:
      write_json(out, layout);
      break;
    case LayoutFormat::Csv:
      write_csv(out, layout);
      break;
    case LayoutFormat::Svg:
      write_svg(out, layout, options.svg_decimation);
      break;
  }
  if (!out) throw InputError("layout export: write failed");
}

void export_layout(const std::filesystem::path& path, const NanobeamLayout& layout,
                   LayoutFormat format, const ExportOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  export_layout(out, layout, format, options);
}

NanobeamLayout import_layout_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("layout json: ") + e.what());
  }
  try {
    if (doc.at("schema") != "pbholo.layout" || doc.at("version") != kSchemaVersion) {
      throw InputError("layout json: unsupported schema or version");
    }
    NanobeamLayout layout;
    layout.unit_cell = doc.at("unit_cell").get<double>();
    layout.aperture = doc.at("aperture").get<double>();
    layout.cells_per_side = doc.at("cells_per_side").get<std::size_t>();
    for (const auto& j : doc.at("beams")) {
      layout.beams.push_back({j.at("x").get<double>(), j.at("y").get<double>(),
                              j.at("theta").get<double>(), j.at("width").get<double>(),
                              j.at("length").get<double>()});
    }
    return layout;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("layout json: ") + e.what());
  }
}

NanobeamLayout import_layout_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return import_layout_json(in);
}

}  // namespace pbholo
