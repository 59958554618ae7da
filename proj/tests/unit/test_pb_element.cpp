#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pbholo/error.hpp"
#include "pbholo/pb_element.hpp"
#include "pbholo/phase.hpp"

using namespace pbholo;

TEST(PbOutput, FullConversionCarriesTwiceTheAngle) {
  const PBOutput out = pb_output(PBElement::ideal(kPi / 8), Helicity::Right);
  EXPECT_NEAR(std::abs(out.co_amp), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.cross_amp), 1.0, 1e-15);
  EXPECT_NEAR(std::arg(out.cross_amp), kPi / 4, 1e-12);
  EXPECT_EQ(out.cross_phase_sign, 1);
  const PBOutput left = pb_output(PBElement::ideal(kPi / 8), Helicity::Left);
  EXPECT_NEAR(std::arg(left.cross_amp), -kPi / 4, 1e-12);
  EXPECT_EQ(left.cross_phase_sign, -1);
}

TEST(PbOutput, IsotropicElementDoesNotConvert) {
  const PBOutput out = pb_output({{1.0, 0.0}, {1.0, 0.0}, 0.7}, Helicity::Right);
  EXPECT_NEAR(std::abs(out.co_amp - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.cross_amp), 0.0, 1e-15);
}

TEST(PbOutput, PartialRetarderEfficiencies) {
  const PBElement e{{1.0, 0.0}, std::polar(0.8, kPi), 0.0};
  const PBOutput out = pb_output(e, Helicity::Right);
  EXPECT_NEAR(out.eta_e(), 0.01, 1e-12);
  EXPECT_NEAR(out.eta_conv(), 0.81, 1e-12);
}

TEST(PbOutput, EnergyIdentityRandomized) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mag(0.0, 1.0), ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const PBElement e{std::polar(mag(rng), ang(rng)), std::polar(mag(rng), ang(rng)), ang(rng)};
    const PBOutput out = pb_output(e, i % 2 ? Helicity::Left : Helicity::Right);
    const double expected = 0.5 * (std::norm(e.t_te) + std::norm(e.t_tm));
    EXPECT_NEAR(out.eta_e() + out.eta_conv(), expected, 1e-12);
  }
}

TEST(PbElementType, RetardanceAndPassivity) {
  EXPECT_NEAR(PBElement::ideal().retardance(), -kPi, 1e-15);
  const PBElement e = PBElement::from_retardance(0.6, 0.5, 2.0, 0.3);
  EXPECT_NEAR(std::abs(e.t_te), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(e.t_tm), 0.5, 1e-15);
  EXPECT_NEAR(e.retardance(), 2.0, 1e-12);
  EXPECT_THROW((PBElement{{1.2, 0.0}, {1.0, 0.0}, 0.0}.validate()), InputError);
}
