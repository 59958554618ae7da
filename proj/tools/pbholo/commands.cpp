#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "pbholo/error.hpp"
#include "pbholo/eye.hpp"
#include "pbholo/holo_design.hpp"
#include "pbholo/layout.hpp"
#include "pbholo/metrics.hpp"
#include "pbholo/pgm.hpp"

namespace pbholo::cli {
namespace {

void prepare(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory " + out_dir.string());
  std::ofstream echo(out_dir / "config.resolved.txt");
  if (!echo) throw InputError("cannot write to " + out_dir.string());
  cfg.write_resolved(echo);
}

std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << std::setprecision(10);
  return out;
}

int levels_of(const RunConfig& cfg) {
  const double v = cfg.number("levels");
  if (v < 0.0 || v != std::floor(v) || v == 1.0 || v > 65536.0) {
    throw InputError("config: levels must be 0 (continuous) or an integer in [2, 65536]");
  }
  return static_cast<int>(v);
}

}  // namespace

void cmd_design(const RunConfig& cfg, const std::filesystem::path& pattern_file,
                const std::filesystem::path& out_dir) {
  const DisplayPattern pattern = read_pattern(pattern_file);
  const SystemGeometry geom = system_geometry(cfg).with_pixels(pattern);
  const std::size_t n = cfg.count("grid_n");
  const int levels = levels_of(cfg);
  AssembleOptions opts;
  opts.gs.iterations = static_cast<int>(cfg.count("gs_iterations"));
  opts.gs.seed = cfg.u64("seed");
  opts.target = pattern;
  const DesignMode mode = design_mode(cfg);
  prepare(cfg, out_dir);

  const PhaseMap phase = assemble_hologram(geom, mode, n, levels, opts);
  write_phase_pgm(out_dir / "phase.pgm", phase, geom.wavelength);
}

void cmd_simulate(const RunConfig& cfg, const std::filesystem::path& phase_file,
                  const std::filesystem::path& mask_file, const std::filesystem::path& out_dir) {
  const PhaseFile pf = read_phase_pgm(phase_file);
  const DisplayPattern mask = read_pattern(mask_file);
  const SystemGeometry geom = system_geometry(cfg).with_pixels(mask);
  const double span = pf.phase.pitch() * static_cast<double>(pf.phase.cols());
  if (std::abs(span - geom.aperture) > 1e-6 * geom.aperture) {
    std::ostringstream msg;
    msg << "grid mismatch: phase map spans " << span << " m but aperture_m is " << geom.aperture;
    throw InputError(msg.str());
  }
  const EyeGeometry eye = eye_geometry(cfg);
  eye.validate();

  SimulationOptions sim;
  sim.wavelength = geom.wavelength;
  sim.analyzer = cfg.flag("analyzer");
  const std::string& helicity = cfg.get("input_helicity");
  if (helicity != "right" && helicity != "left") {
    throw InputError("config: input_helicity must be right or left");
  }
  sim.input = helicity == "right" ? Helicity::Right : Helicity::Left;
  const std::string& emission = cfg.get("emission");
  if (emission != "incoherent" && emission != "coherent") {
    throw InputError("config: emission must be incoherent or coherent");
  }
  sim.emission = emission == "coherent" ? Emission::Coherent : Emission::Incoherent;
  const std::string& plane = cfg.get("plane");
  if (plane != "retina" && plane != "conjugate") {
    throw InputError("config: plane must be retina or conjugate");
  }
  const double lit_threshold = cfg.number("lit_threshold");
  if (!(lit_threshold > 0.0 && lit_threshold <= 1.0)) {
    throw InputError("config: lit_threshold must be in (0, 1]");
  }
  const PBElement elem = element(cfg);
  prepare(cfg, out_dir);

  const bool retina = plane == "retina";
  const RetinaImage image =
      retina ? eye_simulate(pf.phase, mask, eye, elem, sim)
             : conjugate_reconstruct(pf.phase, mask, geom.conjugate_distance, elem, sim);
  write_intensity_pgm(out_dir / (retina ? "retina.pgm" : "conjugate.pgm"), image);

  const TargetLattice lattice{geom, retina ? ImagePlane::Retina : ImagePlane::Conjugate,
                              eye.retina_distance};
  const DisplayMetrics m = display_metrics(image, lattice, mask, lit_threshold);
  auto out = open_text(out_dir / "metrics.txt");
  out << "plane = " << plane << '\n'
      << "emission = " << emission << '\n'
      << "analyzer = " << (sim.analyzer ? "on" : "off") << '\n'
      << "image_n = " << image.n << '\n'
      << "image_pitch_m = " << image.pitch << '\n'
      << "total_power = " << m.total_power << '\n'
      << "zeroth_order_fraction = " << m.zeroth_order_fraction << '\n'
      << "contrast = " << m.contrast << '\n';
  std::size_t identified = 0;
  for (bool b : m.identified) identified += b;
  out << "identified_count = " << identified << '\n';
  out << "identified =\n";
  for (std::size_t i = 0; i < geom.pixel_rows; ++i) {
    for (std::size_t j = 0; j < geom.pixel_cols; ++j) {
      out << (m.identified[i * geom.pixel_cols + j] ? '1' : '0');
    }
    out << '\n';
  }
  out << "cell_fraction =\n";
  for (std::size_t i = 0; i < geom.pixel_rows; ++i) {
    for (std::size_t j = 0; j < geom.pixel_cols; ++j) {
      out << (j ? " " : "") << m.cell_fraction[i * geom.pixel_cols + j];
    }
    out << '\n';
  }
}

void cmd_grating(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const SweepOptions opts = sweep_options(cfg);
  prepare(cfg, out_dir);
  const SweepResult result = design_sweep(opts);
  {
    std::ofstream csv(out_dir / "sweep.csv");
    if (!csv) throw InputError("cannot write sweep.csv");
    write_sweep_csv(csv, result, opts.wavelength);
  }
  const SweepPoint& best = result.points[result.best];
  auto out = open_text(out_dir / "best.txt");
  out << "points = " << result.points.size() << '\n'
      << "period_nm = " << best.period * 1e9 << '\n'
      << "width_nm = " << best.width * 1e9 << '\n'
      << "thickness_nm = " << best.thickness * 1e9 << '\n'
      << "t_te_abs = " << std::abs(best.response.t_te()) << '\n'
      << "t_tm_abs = " << std::abs(best.response.t_tm()) << '\n'
      << "dphi_rad = " << best.response.retardance() << '\n'
      << "objective = " << best.objective << '\n';
}

void cmd_layout(const RunConfig& cfg, const std::filesystem::path& phase_file,
                const std::filesystem::path& out_dir) {
  const PhaseFile pf = read_phase_pgm(phase_file);
  const double cell = cfg.positive("unit_cell_nm") * 1e-9;
  const double w = cfg.positive("beam_width_nm") * 1e-9;
  const double l = cfg.positive("beam_length_nm") * 1e-9;
  const ClipPolicy policy = clip_policy(cfg);
  const std::vector<LayoutFormat> formats = layout_formats(cfg);
  ExportOptions eo;
  eo.svg_decimation = cfg.count("svg_decimation");
  prepare(cfg, out_dir);

  const NanobeamLayout layout = generate_layout(pf.phase, cell, w, l, policy);
  for (LayoutFormat f : formats) {
    const char* name = f == LayoutFormat::Json ? "layout.json"
                       : f == LayoutFormat::Csv ? "layout.csv"
                                                : "layout.svg";
    export_layout(out_dir / name, layout, f, eo);
  }
  std::set<double> angles;
  for (const Beam& b : layout.beams) angles.insert(b.theta);
  auto out = open_text(out_dir / "layout.txt");
  out << "cells_per_side = " << layout.cells_per_side << '\n'
      << "beam_count = " << layout.beams.size() << '\n'
      << "distinct_angles = " << angles.size() << '\n';
}

}  // namespace pbholo::cli
