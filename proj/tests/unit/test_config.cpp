#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "config.hpp"
#include "pbholo/error.hpp"

using namespace pbholo;
using pbholo::cli::RunConfig;

TEST(Config, DefaultsResolve) {
  const RunConfig cfg;
  const SystemGeometry g = cli::system_geometry(cfg);
  EXPECT_DOUBLE_EQ(g.aperture, 500e-6);
  EXPECT_DOUBLE_EQ(g.magnification, 100.0);
  EXPECT_EQ(cfg.count("grid_n"), 2048u);
  EXPECT_EQ(cfg.u64("seed"), 1u);
  EXPECT_FALSE(cfg.flag("analyzer"));
  EXPECT_EQ(cli::design_mode(cfg), DesignMode::PerCell);
  const EyeGeometry eye = cli::eye_geometry(cfg);
  EXPECT_NEAR(eye.effective_focal_length(), 0.25 / 11.0, 1e-15);
  const SweepOptions s = cli::sweep_options(cfg);
  EXPECT_EQ(s.thickness.values().size(), 31u);
  EXPECT_EQ(cli::layout_formats(cfg).size(), 2u);
}

TEST(Config, FileOverridesAndComments) {
  RunConfig cfg;
  std::istringstream in("# comment\nseed = 99  # trailing\n\nmode=full_gs\neye_accommodation_m = relaxed\n");
  cfg.load(in, "t.cfg");
  EXPECT_EQ(cfg.u64("seed"), 99u);
  EXPECT_EQ(cli::design_mode(cfg), DesignMode::FullGs);
  EXPECT_NEAR(cli::eye_geometry(cfg).effective_focal_length(), 0.017, 0.0);
  cfg.set("eye_accommodation_m", "0.024");
  EXPECT_NEAR(cli::eye_geometry(cfg).effective_focal_length(), 0.024, 0.0);
}

TEST(Config, RejectsUnknownKeysWithLineNumber) {
  RunConfig cfg;
  std::istringstream in("seed = 2\nwavelenght_m = 5e-7\n");
  try {
    cfg.load(in, "t.cfg");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("t.cfg:2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("wavelenght_m"), std::string::npos) << msg;
  }
  std::istringstream noeq("seed 2\n");
  EXPECT_THROW(cfg.load(noeq, "t.cfg"), InputError);
  EXPECT_THROW(cfg.set("nope", "1"), InputError);
}

TEST(Config, ValueChecks) {
  RunConfig cfg;
  cfg.set("grid_n", "0");
  EXPECT_THROW(cfg.count("grid_n"), InputError);
  cfg.set("aperture_m", "-1");
  EXPECT_THROW(cfg.positive("aperture_m"), InputError);
  cfg.set("analyzer", "maybe");
  EXPECT_THROW(cfg.flag("analyzer"), InputError);
  cfg.set("seed", "abc");
  EXPECT_THROW(cfg.u64("seed"), InputError);
  cfg.set("grating_thickness_nm", "200:100:5");
  EXPECT_THROW(cli::sweep_options(cfg), InputError);
  cfg.set("grating_thickness_nm", "155");
  EXPECT_EQ(cfg.range_nm("grating_thickness_nm").values().size(), 1u);
  cfg.set("layout_formats", "json,dxf");
  EXPECT_THROW(cli::layout_formats(cfg), InputError);
  cfg.set("clip_policy", "loose");
  EXPECT_THROW(cli::clip_policy(cfg), InputError);
}

TEST(Config, ResolvedEchoIsOrderedAndComplete) {
  RunConfig cfg;
  cfg.set("seed", "5");
  std::ostringstream out;
  cfg.write_resolved(out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t k = 0;
  const auto keys = RunConfig::keys();
  while (std::getline(in, line)) {
    ASSERT_LT(k, keys.size());
    EXPECT_EQ(line.rfind(keys[k] + " = ", 0), 0u) << line;
    ++k;
  }
  EXPECT_EQ(k, keys.size());
  EXPECT_NE(out.str().find("seed = 5\n"), std::string::npos);
}

TEST(Config, ElementFromRetardance) {
  RunConfig cfg;
  cfg.set("element_t_te_abs", "0.55");
  cfg.set("element_t_tm_abs", "0.58");
  cfg.set("element_dphi_rad", "2.934");
  const PBElement e = cli::element(cfg);
  EXPECT_NEAR(std::abs(e.t_te), 0.55, 1e-15);
  EXPECT_NEAR(std::abs(e.t_tm), 0.58, 1e-15);
  EXPECT_NEAR(std::arg(e.t_tm) - std::arg(e.t_te), 2.934, 1e-12);
}
