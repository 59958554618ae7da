#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pbholo/error.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbholo: PB metasurface hologram design and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string analyzer;
  std::string mode;
  std::string plane;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "64-bit seed (overrides config)");
  app.add_option("--analyzer", analyzer, "cross-polarized analyzer")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--mode", mode, "hologram design mode")->check(CLI::IsMember({"per_cell", "full_gs"}));
  app.add_option("--plane", plane, "simulation plane")->check(CLI::IsMember({"retina", "conjugate"}));

  std::string pattern_file, phase_file, mask_file;
  auto* design = app.add_subcommand("design", "design a phase map for a display pattern");
  design->add_option("pattern", pattern_file, "0/1 text grid or 8-bit PGM")->required();
  auto* simulate = app.add_subcommand("simulate", "render a phase map through the eye model");
  simulate->add_option("phase", phase_file, "phase PGM from design")->required();
  simulate->add_option("mask", mask_file, "lit-pixel pattern")->required();
  auto* grating = app.add_subcommand("grating", "sweep the nanobeam grating geometry");
  auto* layout = app.add_subcommand("layout", "export the nanobeam layout of a phase map");
  layout->add_option("phase", phase_file, "quantized phase PGM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    pbholo::cli::RunConfig cfg;
    if (!config_path.empty()) cfg.load(std::filesystem::path(config_path));
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (!analyzer.empty()) cfg.set("analyzer", analyzer);
    if (!mode.empty()) cfg.set("mode", mode);
    if (!plane.empty()) cfg.set("plane", plane);

    if (*design) pbholo::cli::cmd_design(cfg, pattern_file, out_dir);
    if (*simulate) pbholo::cli::cmd_simulate(cfg, phase_file, mask_file, out_dir);
    if (*grating) pbholo::cli::cmd_grating(cfg, out_dir);
    if (*layout) pbholo::cli::cmd_layout(cfg, phase_file, out_dir);
  } catch (const pbholo::InputError& e) {
    std::cerr << "pbholo: " << e.what() << '\n';
    return kInputError;
  } catch (const pbholo::NumericalError& e) {
    std::cerr << "pbholo: numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "pbholo: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
