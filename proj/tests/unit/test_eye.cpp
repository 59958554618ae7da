#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pbholo/error.hpp"
#include "pbholo/eye.hpp"
#include "pbholo/holo_design.hpp"
#include "pbholo/metrics.hpp"

using namespace pbholo;

namespace {

constexpr std::size_t kN = 512;

const PhaseMap& designed() {
  static const PhaseMap map = assemble_hologram(SystemGeometry{}, DesignMode::PerCell, kN, 8);
  return map;
}

EyeGeometry focused_eye() {
  EyeGeometry eye;
  eye.accommodation = eye.focused_on(0.25);
  return eye;
}

double lit_power(const DisplayPattern& mask) {
  const double cell = 500e-6 / static_cast<double>(mask.rows());
  return static_cast<double>(mask.lit_count()) * cell * cell;
}

}  // namespace

TEST(EyeGeometryType, FocusOnConjugatePlane) {
  const EyeGeometry eye;
  EXPECT_NEAR(eye.focused_on(0.25), 0.25 / 11.0, 1e-15);
  EXPECT_EQ(eye.effective_focal_length(), 0.017);
  EyeGeometry bad;
  bad.retina_distance = 0.0;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(EyeSimulate, PassiveAndAnalyzerRemovesZerothOrder) {
  const DisplayPattern mask = DisplayPattern::single(10, 10, 2, 3);
  const PBElement leaky{{1.0, 0.0}, std::polar(0.8, kPi), 0.0};
  SimulationOptions opts;
  const RetinaImage img = eye_simulate(designed(), mask, focused_eye(), leaky, opts);
  EXPECT_LE(img.total_power(), lit_power(mask) * 0.82 * (1.0 + 1e-9));
  EXPECT_NEAR(img.zeroth_order_power / img.total_power(), 0.01 / 0.82, 1e-9);
  opts.analyzer = true;
  const RetinaImage cut = eye_simulate(designed(), mask, focused_eye(), leaky, opts);
  EXPECT_EQ(cut.zeroth_order_power, 0.0);
  EXPECT_NEAR(cut.total_power() / img.total_power(), 0.81 / 0.82, 1e-9);
}

TEST(EyeSimulate, IncoherentPixelsAddIntensities) {
  DisplayPattern a = DisplayPattern::single(10, 10, 1, 1);
  DisplayPattern b = DisplayPattern::single(10, 10, 6, 8);
  DisplayPattern both = a;
  both.set(6, 8, true);
  const PBElement e = PBElement::ideal();
  const RetinaImage ia = eye_simulate(designed(), a, focused_eye(), e);
  const RetinaImage ib = eye_simulate(designed(), b, focused_eye(), e);
  const RetinaImage iab = eye_simulate(designed(), both, focused_eye(), e);
  double worst = 0.0;
  for (std::size_t k = 0; k < iab.intensity.size(); ++k) {
    worst = std::max(worst, std::abs(iab.intensity[k] - ia.intensity[k] - ib.intensity[k]));
  }
  const double peak = *std::max_element(iab.intensity.begin(), iab.intensity.end());
  EXPECT_LT(worst, 1e-12 * peak);
}

TEST(EyeSimulate, RetinaPitchAndGridChecks) {
  const DisplayPattern mask(10, 10, true);
  const RetinaImage img = eye_simulate(designed(), mask, focused_eye(), PBElement::ideal());
  EXPECT_NEAR(img.pitch, 543e-9 * 0.025 / 500e-6, 1e-15);
  EXPECT_EQ(img.plane, ImagePlane::Retina);
  const PhaseMap odd(3, 3, 1e-6);
  EXPECT_THROW(eye_simulate(odd, mask, focused_eye(), PBElement::ideal()), InputError);
  const DisplayPattern fine(1024, 1024, true);
  EXPECT_THROW(eye_simulate(designed(), fine, focused_eye(), PBElement::ideal()), InputError);
}

TEST(EyeSimulate, FullMaskGivesHundredSpotsOnRetina) {
  const DisplayPattern mask(10, 10, true);
  const RetinaImage img = eye_simulate(designed(), mask, focused_eye(), PBElement::ideal());
  const std::vector<Peak> peaks = find_dominant_maxima(img, 4, 0.2);
  EXPECT_EQ(peaks.size(), 100u);
  const TargetLattice lattice{SystemGeometry{}, ImagePlane::Retina, 0.025};
  const DisplayMetrics m = display_metrics(img, lattice, mask);
  for (bool b : m.identified) EXPECT_TRUE(b);
}

TEST(Conjugate, CornerPixelLandsAtMagnifiedPosition) {
  const DisplayPattern mask = DisplayPattern::single(10, 10, 0, 0);
  const RetinaImage img = conjugate_reconstruct(designed(), mask, 0.25, PBElement::ideal());
  EXPECT_EQ(img.plane, ImagePlane::Conjugate);
  const std::vector<Peak> peaks = find_dominant_maxima(img, 4, 0.5);
  ASSERT_FALSE(peaks.empty());
  EXPECT_NEAR(img.x(peaks[0].col), -22.5e-3, 2.5e-3);
  EXPECT_NEAR(img.y(peaks[0].row), -22.5e-3, 2.5e-3);
  const TargetLattice lattice{SystemGeometry{}, ImagePlane::Conjugate, 0.025};
  const Point p = cell_centroid(img, lattice, 0, 0);
  EXPECT_NEAR(p.x, -22.5e-3, 0.5 * img.pitch + 1e-4);
  EXPECT_NEAR(p.y, -22.5e-3, 0.5 * img.pitch + 1e-4);
}

TEST(Conjugate, ZeroPhaseStaysInCentralEnvelope) {
  const PhaseMap flat(kN, kN, 500e-6 / kN);
  const DisplayPattern mask(10, 10, true);
  const RetinaImage img = conjugate_reconstruct(flat, mask, 0.25, PBElement::ideal());
  const TargetLattice lattice{SystemGeometry{}, ImagePlane::Conjugate, 0.025};
  const std::vector<double> e = cell_energies(img, lattice);
  const double corner = e[0] + e[9] + e[90] + e[99];
  const double centre = e[44] + e[45] + e[54] + e[55];
  EXPECT_GT(centre, 100.0 * corner);
}

TEST(Accommodation, SinglePixelHologramFocusesOnConjugatePlane) {
  SystemGeometry g;
  g.pixel_rows = g.pixel_cols = 1;
  const PhaseMap lens = assemble_hologram(g, DesignMode::PerCell, kN, 8);
  const AccommodationSweep s = accommodation_sweep(lens, DisplayPattern(1, 1, true), EyeGeometry{},
                                                   PBElement::ideal(), g, 0.020, 0.026, 13);
  EXPECT_NEAR(s.best_focal_length, 0.25 / 11.0, 0.5e-3 + 1e-12);
}

TEST(Accommodation, TenByTenSweepHasInteriorMaximum) {
  // Each 50 um cell is a low-Fresnel-number aperture, so the optimum sits
  // a little short of the thin-lens value.
  const DisplayPattern mask(10, 10, true);
  const AccommodationSweep s = accommodation_sweep(designed(), mask, EyeGeometry{},
                                                   PBElement::ideal(), SystemGeometry{}, 0.020,
                                                   0.026, 13);
  ASSERT_EQ(s.sharpness.size(), 13u);
  EXPECT_NEAR(s.best_focal_length, 0.25 / 11.0, 1e-3);
  std::size_t k = 0;
  while (s.focal_lengths[k] != s.best_focal_length) ++k;
  EXPECT_GT(k, 0u);
  EXPECT_LT(k, 12u);
  for (std::size_t m = 1; m <= k; ++m) EXPECT_GT(s.sharpness[m], s.sharpness[m - 1]);
  for (std::size_t m = k + 1; m < 13; ++m) EXPECT_LT(s.sharpness[m], s.sharpness[m - 1]);
}

TEST(Accommodation, FlatPhaseFocusesAtRetinaDistance) {
  SystemGeometry g;
  g.pixel_rows = g.pixel_cols = 1;
  const PhaseMap flat(kN, kN, 500e-6 / kN);
  const AccommodationSweep s = accommodation_sweep(flat, DisplayPattern(1, 1, true), EyeGeometry{},
                                                   PBElement::ideal(), g, 0.022, 0.028, 13);
  EXPECT_NEAR(s.best_focal_length, 0.025, 0.5e-3 + 1e-12);
}

TEST(Accommodation, RejectsEmptyRange) {
  const DisplayPattern mask(10, 10, true);
  EXPECT_THROW(accommodation_sweep(designed(), mask, EyeGeometry{}, PBElement::ideal(),
                                   SystemGeometry{}, 0.02, 0.02, 5),
               InputError);
  EXPECT_THROW(accommodation_sweep(designed(), mask, EyeGeometry{}, PBElement::ideal(),
                                   SystemGeometry{}, 0.02, 0.03, 2),
               InputError);
}

TEST(Metrics, DominantMaximaOnSyntheticImage) {
  RetinaImage img;
  img.n = 32;
  img.pitch = 1.0;
  img.intensity.assign(32 * 32, 0.01);
  img.intensity[5 * 32 + 5] = 1.0;
  img.intensity[5 * 32 + 6] = 0.9;  // shoulder of the first peak
  img.intensity[20 * 32 + 25] = 0.5;
  img.intensity[30 * 32 + 2] = 0.05;  // below threshold
  const std::vector<Peak> peaks = find_dominant_maxima(img, 3, 0.1);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].row, 5u);
  EXPECT_EQ(peaks[0].col, 5u);
  EXPECT_EQ(peaks[1].row, 20u);
  EXPECT_EQ(peaks[1].col, 25u);
}

TEST(Metrics, CellEnergiesPartitionTheLattice) {
  RetinaImage img;
  img.n = 64;
  img.pitch = 1.0;
  img.plane = ImagePlane::Conjugate;
  img.intensity.assign(64 * 64, 1.0);
  SystemGeometry g;
  g.aperture = 0.64;  // conjugate lattice spans 64 samples at Mag 100
  g.pixel_rows = g.pixel_cols = 4;
  const TargetLattice lattice{g, ImagePlane::Conjugate, 0.025};
  const std::vector<double> e = cell_energies(img, lattice);
  EXPECT_NEAR(std::accumulate(e.begin(), e.end(), 0.0), 64.0 * 64.0, 1e-9);
  for (double v : e) EXPECT_NEAR(v, 256.0, 1e-9);
  const DisplayMetrics m = display_metrics(img, lattice, DisplayPattern(4, 4, true));
  EXPECT_TRUE(std::isinf(m.contrast));
  EXPECT_THROW(display_metrics(img, lattice, DisplayPattern(3, 3, true)), InputError);
}
