#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pbholo/dispersion.hpp"
#include "pbholo/error.hpp"

#ifndef PBHOLO_DATA_DIR
#define PBHOLO_DATA_DIR "data"
#endif

namespace pbholo::cli {
namespace {

struct Default {
  const char* key;
  const char* value;
};

// clang-format off
const Default kDefaults[] = {
    // system geometry
    {"aperture_m", "500e-6"},
    {"conjugate_distance_m", "0.25"},
    {"magnification", "100"},
    {"wavelength_m", "543e-9"},
    {"pixel_size_m", "auto"},
    // hologram design
    {"grid_n", "2048"},
    {"levels", "8"},
    {"mode", "per_cell"},
    {"seed", "1"},
    {"gs_iterations", "50"},
    // eye and simulation
    {"eye_focal_m", "0.017"},
    {"eye_retina_distance_m", "0.025"},
    {"eye_accommodation_m", "auto"},
    {"element_t_te_abs", "1"},
    {"element_t_tm_abs", "1"},
    {"element_dphi_rad", "3.141592653589793"},
    {"input_helicity", "right"},
    {"emission", "incoherent"},
    {"analyzer", "off"},
    {"plane", "retina"},
    {"lit_threshold", "0.25"},
    // grating sweep
    {"grating_wavelength_nm", "543"},
    {"grating_period_nm", "230"},
    {"grating_width_nm", "70"},
    {"grating_thickness_nm", "100:250:5"},
    {"grating_harmonics", "15"},
    {"grating_material_file", PBHOLO_DATA_DIR "/polysilicon.txt"},
    {"grating_gap_index", "1.0"},
    {"grating_substrate_index", "1.46"},
    {"grating_cover_index", "1.0"},
    {"grating_weight_amplitude", "1"},
    {"grating_weight_phase", "1"},
    {"grating_subwavelength_filter", "on"},
    {"grating_threads", "0"},
    // layout
    {"unit_cell_nm", "230"},
    {"beam_width_nm", "70"},
    {"beam_length_nm", "180"},
    {"clip_policy", "strict"},
    {"layout_formats", "csv,svg"},
    {"svg_decimation", "50"},
};
// clang-format on

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::logic_error&) {
  }
  throw InputError("config: " + key + " = '" + text + "' is not a finite number");
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& d : kDefaults) values_[d.key] = d.value;
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& d : kDefaults) out.emplace_back(d.key);
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!values_.count(key)) throw InputError("config: unknown key '" + key + "'");
  values_[key] = value;
}

void RunConfig::load(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!values_.count(key)) {
      throw InputError(source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw InputError(source + ":" + std::to_string(line_no) + ": empty value for '" + key + "'");
    }
    values_[key] = value;
  }
}

void RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  load(in, path.string());
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InputError("config: unknown key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_double(key, get(key)); }

double RunConfig::positive(const std::string& key) const {
  const double v = number(key);
  if (!(v > 0.0)) throw InputError("config: " + key + " must be > 0");
  return v;
}

std::size_t RunConfig::count(const std::string& key) const {
  const double v = number(key);
  if (v < 1.0 || v != std::floor(v) || v > 1e9) {
    throw InputError("config: " + key + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::uint64_t RunConfig::u64(const std::string& key) const {
  const std::string& text = get(key);
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] != '-') {
      const auto v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::logic_error&) {
  }
  throw InputError("config: " + key + " must be an unsigned 64-bit integer");
}

bool RunConfig::flag(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "on") return true;
  if (v == "off") return false;
  throw InputError("config: " + key + " must be 'on' or 'off'");
}

SweepRange RunConfig::range_nm(const std::string& key) const {
  const std::string& text = get(key);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_double(key, trim(item)) * 1e-9);
  if (parts.size() == 1) return {parts[0], parts[0], 0.0};
  if (parts.size() == 3 && parts[2] > 0.0 && parts[1] >= parts[0]) {
    return {parts[0], parts[1], parts[2]};
  }
  throw InputError("config: " + key + " must be 'value' or 'start:stop:step' with step > 0");
}

void RunConfig::write_resolved(std::ostream& out) const {
  for (const auto& d : kDefaults) out << d.key << " = " << values_.at(d.key) << '\n';
}

SystemGeometry system_geometry(const RunConfig& cfg) {
  SystemGeometry g;
  g.aperture = cfg.positive("aperture_m");
  g.conjugate_distance = cfg.positive("conjugate_distance_m");
  g.magnification = cfg.positive("magnification");
  g.wavelength = cfg.positive("wavelength_m");
  g.pixel_size = cfg.get("pixel_size_m") == "auto" ? 0.0 : cfg.positive("pixel_size_m");
  return g;
}

EyeGeometry eye_geometry(const RunConfig& cfg) {
  EyeGeometry e;
  e.focal_length = cfg.positive("eye_focal_m");
  e.retina_distance = cfg.positive("eye_retina_distance_m");
  if (cfg.get("eye_accommodation_m") == "auto") {
    e.accommodation = e.focused_on(cfg.positive("conjugate_distance_m"));
  } else if (cfg.get("eye_accommodation_m") != "relaxed") {
    e.accommodation = cfg.positive("eye_accommodation_m");
  }
  return e;
}

PBElement element(const RunConfig& cfg) {
  const PBElement e = PBElement::from_retardance(cfg.number("element_t_te_abs"),
                                                 cfg.number("element_t_tm_abs"),
                                                 cfg.number("element_dphi_rad"));
  e.validate();
  return e;
}

DesignMode design_mode(const RunConfig& cfg) {
  const std::string& m = cfg.get("mode");
  if (m == "per_cell") return DesignMode::PerCell;
  if (m == "full_gs") return DesignMode::FullGs;
  throw InputError("config: mode must be per_cell or full_gs");
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.wavelength = cfg.positive("grating_wavelength_nm") * 1e-9;
  o.period = cfg.range_nm("grating_period_nm");
  o.width = cfg.range_nm("grating_width_nm");
  o.thickness = cfg.range_nm("grating_thickness_nm");
  o.harmonics = static_cast<int>(cfg.count("grating_harmonics"));
  o.beam = Material::tabulated(load_dispersion(std::filesystem::path(cfg.get("grating_material_file"))));
  o.gap = Material::constant({cfg.positive("grating_gap_index"), 0.0});
  o.n_substrate = cfg.positive("grating_substrate_index");
  o.n_cover = cfg.positive("grating_cover_index");
  o.weight_amplitude = cfg.number("grating_weight_amplitude");
  o.weight_phase = cfg.number("grating_weight_phase");
  if (o.weight_amplitude < 0.0 || o.weight_phase < 0.0) {
    throw InputError("config: grating weights must be >= 0");
  }
  o.subwavelength_filter = cfg.flag("grating_subwavelength_filter");
  const double threads = cfg.number("grating_threads");
  if (threads < 0.0 || threads != std::floor(threads)) {
    throw InputError("config: grating_threads must be a non-negative integer");
  }
  o.threads = static_cast<unsigned>(threads);
  return o;
}

ClipPolicy clip_policy(const RunConfig& cfg) {
  const std::string& p = cfg.get("clip_policy");
  if (p == "strict") return ClipPolicy::Strict;
  if (p == "clip") return ClipPolicy::Clip;
  throw InputError("config: clip_policy must be strict or clip");
}

std::vector<LayoutFormat> layout_formats(const RunConfig& cfg) {
  std::vector<LayoutFormat> out;
  std::stringstream ss(cfg.get("layout_formats"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_layout_format(item));
  }
  if (out.empty()) throw InputError("config: layout_formats is empty");
  return out;
}

}  // namespace pbholo::cli
