#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pbholo/error.hpp"
#include "pbholo/fft.hpp"
#include "pbholo/field.hpp"
#include "pbholo/phase.hpp"
#include "pbholo/propagation.hpp"

using namespace pbholo;

namespace {

ComplexField gaussian(std::size_t n, double pitch, double lambda, double w0) {
  ComplexField f(n, pitch, lambda);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double r2 = f.x(c) * f.x(c) + f.y(r) * f.y(r);
      f(r, c) = std::exp(-r2 / (w0 * w0));
    }
  }
  return f;
}

// 1/e^2 intensity radius from the second moment along x.
double beam_radius(const ComplexField& f) {
  double sum = 0.0, sxx = 0.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    for (std::size_t c = 0; c < f.size(); ++c) {
      const double i = std::norm(f(r, c));
      sum += i;
      sxx += i * f.x(c) * f.x(c);
    }
  }
  return 2.0 * std::sqrt(sxx / sum);
}

ComplexField disk(std::size_t n, double pitch, double lambda, double diameter) {
  ComplexField f(n, pitch, lambda);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (std::hypot(f.x(c), f.y(r)) < 0.5 * diameter) f(r, c) = 1.0;
    }
  }
  return f;
}

}  // namespace

TEST(Fft, CentredTransformOfDeltaIsFlat) {
  const std::size_t n = 8;
  std::vector<Complex> d(n * n);
  d[(n / 2) * n + n / 2] = 1.0;
  fft2_centered(d, n, FftDirection::Forward);
  for (const Complex& v : d) EXPECT_NEAR(std::abs(v - Complex(1.0, 0.0)), 0.0, 1e-14);
}

TEST(Fft, UnitaryRoundTrip) {
  const std::size_t n = 16;
  std::vector<Complex> d(n * n);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = Complex(std::sin(0.3 * i), std::cos(0.7 * i));
  const auto orig = d;
  fft2_unitary(d, n, FftDirection::Forward);
  fft2_unitary(d, n, FftDirection::Backward);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(d[i] - orig[i]), 0.0, 1e-13);
}

TEST(AngularSpectrum, ZeroDistanceIsIdentity) {
  const ComplexField g = gaussian(64, 1e-6, 543e-9, 8e-6);
  EXPECT_EQ(max_abs_difference(angular_spectrum(g, 0.0), g), 0.0);
}

TEST(AngularSpectrum, PlaneWaveGainsPropagationPhase) {
  ComplexField f(32, 1e-6, 543e-9);
  for (Complex& v : f.samples()) v = 1.0;
  const double dz = 10.3e-6;
  const ComplexField out = angular_spectrum(f, dz);
  const Complex expected = std::polar(1.0, kTwoPi * dz / 543e-9);
  for (const Complex& v : out.samples()) EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-12);
}

TEST(AngularSpectrum, GaussianWidensBySqrtTwoAtRayleighRange) {
  const double w0 = 20e-6, lambda = 543e-9;
  const ComplexField g = gaussian(512, 0.5e-6, lambda, w0);
  const double zr = kPi * w0 * w0 / lambda;
  const ComplexField out = angular_spectrum(g, zr);
  EXPECT_NEAR(beam_radius(g), w0, 1e-3 * w0);
  EXPECT_NEAR(beam_radius(out) / beam_radius(g), std::sqrt(2.0), 0.01 * std::sqrt(2.0));
}

TEST(AngularSpectrum, RoundTripAndPowerOnBandLimitedField) {
  const ComplexField g = gaussian(256, 0.5e-6, 543e-9, 10e-6);
  const ComplexField fwd = angular_spectrum(g, 500e-6);
  EXPECT_NEAR(fwd.power() / g.power(), 1.0, 1e-9);
  const ComplexField back = angular_spectrum(fwd, -500e-6);
  EXPECT_LT(max_abs_difference(back, g), 1e-9);
}

TEST(AngularSpectrum, LongThrowReportsRequiredPadding) {
  ComplexField point(256, 0.25e-6, 543e-9);
  point(128, 128) = 1.0;
  try {
    angular_spectrum(point, 0.25);
    FAIL() << "expected AliasingError";
  } catch (const AliasingError& e) {
    EXPECT_GT(e.required_padding(), 1);
  }
}

TEST(FresnelSingle, OutputPitch) {
  ComplexField f(2048, 500e-6 / 2048, 543e-9);
  f(1024, 1024) = 1.0;
  const ComplexField out = fresnel_single(f, 25e-3);
  EXPECT_NEAR(out.pitch(), 27.15e-6, 1e-12);
}

TEST(FresnelSingle, PowerIsConserved) {
  const ComplexField g = disk(256, 1e-6, 543e-9, 100e-6);
  const ComplexField out = fresnel_single(g, 0.05);
  EXPECT_NEAR(out.power() / g.power(), 1.0, 1e-9);
}

TEST(FresnelSingle, RejectsNonPositiveDistance) {
  const ComplexField g = gaussian(16, 1e-6, 543e-9, 3e-6);
  EXPECT_THROW(fresnel_single(g, 0.0), InputError);
  EXPECT_THROW(fresnel_single(g, -1e-3), InputError);
}

TEST(FresnelSingle, FocusedDiskGivesAiryFirstZero) {
  const std::size_t n = 1024;
  const double pitch = 1e-6, lambda = 543e-9, d = 200e-6, f = 0.05;
  const ComplexField focal = fresnel_single(thin_lens(disk(n, pitch, lambda, d), f), f);
  const std::size_t mid = n / 2;
  double peak = 0.0;
  std::size_t peak_c = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::norm(focal(mid, c)) > peak) {
      peak = std::norm(focal(mid, c));
      peak_c = c;
    }
  }
  EXPECT_EQ(peak_c, mid);
  std::size_t c = mid + 1;
  while (c + 1 < n && std::norm(focal(mid, c + 1)) < std::norm(focal(mid, c))) ++c;
  const double expected = 1.22 * lambda * f / d;
  EXPECT_LE(std::abs(focal.x(c) - expected), focal.pitch());
}

TEST(ThinLens, OppositeLensesCancel) {
  const ComplexField g = gaussian(64, 1e-6, 543e-9, 10e-6);
  const ComplexField twice = thin_lens(thin_lens(g, 0.02), -0.02);
  EXPECT_LT(max_abs_difference(twice, g), 1e-12);
  const ComplexField flat = thin_lens(g, std::numeric_limits<double>::infinity());
  EXPECT_LT(max_abs_difference(flat, g), 1e-9);
  EXPECT_THROW(thin_lens(g, 0.0), InputError);
}
