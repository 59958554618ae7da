#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pbholo/eye.hpp"
#include "pbholo/geometry.hpp"
#include "pbholo/grating.hpp"
#include "pbholo/holo_design.hpp"
#include "pbholo/layout.hpp"
#include "pbholo/pb_element.hpp"

namespace pbholo::cli {

/// `key = value` settings. Every known key has a default; unknown keys are
/// rejected. Order of keys is fixed so the resolved echo is reproducible.
class RunConfig {
 public:
  RunConfig();

  /// Applies a config file; later assignments win.
  void load(std::istream& in, const std::string& source);
  void load(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  double positive(const std::string& key) const;
  std::size_t count(const std::string& key) const;  // integer >= 1
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key) const;          // on/off
  SweepRange range_nm(const std::string& key) const;  // "v" or "start:stop:step", in nm

  /// All keys in fixed order as `key = value` lines.
  void write_resolved(std::ostream& out) const;

  static std::vector<std::string> keys();

 private:
  std::map<std::string, std::string> values_;
};

SystemGeometry system_geometry(const RunConfig& cfg);
EyeGeometry eye_geometry(const RunConfig& cfg);
PBElement element(const RunConfig& cfg);
DesignMode design_mode(const RunConfig& cfg);
SweepOptions sweep_options(const RunConfig& cfg);
ClipPolicy clip_policy(const RunConfig& cfg);
std::vector<LayoutFormat> layout_formats(const RunConfig& cfg);

}  // namespace pbholo::cli
