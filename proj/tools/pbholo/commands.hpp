#pragma once

#include <filesystem>

#include "config.hpp"

namespace pbholo::cli {

/// phase.pgm (+ sidecar) for the pattern's pixel grid.
void cmd_design(const RunConfig& cfg, const std::filesystem::path& pattern_file,
                const std::filesystem::path& out_dir);

/// retina.pgm or conjugate.pgm plus metrics.txt.
void cmd_simulate(const RunConfig& cfg, const std::filesystem::path& phase_file,
                  const std::filesystem::path& mask_file, const std::filesystem::path& out_dir);

/// sweep.csv and best.txt.
void cmd_grating(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// layout.{json,csv,svg} as configured, plus layout.txt.
void cmd_layout(const RunConfig& cfg, const std::filesystem::path& phase_file,
                const std::filesystem::path& out_dir);

}  // namespace pbholo::cli
