#include <gtest/gtest.h>

#include <sstream>

#include "pbholo/dispersion.hpp"
#include "pbholo/error.hpp"

using namespace pbholo;


TEST(Dispersion, MidpointAndNodes) {
  std::istringstream in("# test table\n500 4.0 0.10\n600 4.2 0.05\n\n700 4.5 0.0\n");
  const DispersionTable t = load_dispersion(in);
  ASSERT_EQ(t.rows().size(), 3u);
  EXPECT_NEAR(t.index(550e-9).real(), 4.1, 1e-12);
  EXPECT_NEAR(t.index(550e-9).imag(), -0.075, 1e-12);
  EXPECT_EQ(t.index(600e-9), Complex(4.2, -0.05));
  EXPECT_EQ(interpolate(t, 700e-9), Complex(4.5, 0.0));
}

TEST(Dispersion, OutOfRangeIsAnError) {
  std::istringstream in("450 4.0 0.1\n600 4.2 0.05\n");
  const DispersionTable t = load_dispersion(in);
  EXPECT_THROW(t.index(400e-9), InputError);
  EXPECT_THROW(t.index(601e-9), InputError);
}

TEST(Dispersion, RejectsBadTables) {
  std::istringstream non_monotone("500 4.0 0.1\n500 4.1 0.1\n");
  EXPECT_THROW(load_dispersion(non_monotone), InputError);
  std::istringstream single("500 4.0 0.1\n");
  EXPECT_THROW(load_dispersion(single), InputError);
  std::istringstream negative_k("500 4.0 -0.1\n600 4.0 0.1\n");
  EXPECT_THROW(load_dispersion(negative_k), InputError);
  std::istringstream garbage("500 four 0.1\n600 4.0 0.1\n");
  EXPECT_THROW(load_dispersion(garbage), InputError);
}

TEST(Dispersion, CommittedPolysiliconTableCoversVisible) {
  const DispersionTable t =
      load_dispersion(std::filesystem::path(PBHOLO_DATA_DIR) / "polysilicon.txt");
  const Complex n = t.index(543e-9);
  EXPECT_GT(n.real(), 3.5);
  EXPECT_LT(n.real(), 4.5);
  EXPECT_LT(n.imag(), 0.0);
}
