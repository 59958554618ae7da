#pragma once

#include "pbholo/field.hpp"

namespace pbholo {

struct AngularSpectrumOptions {
  /// Zero-padding factor applied before the transform. 0 selects the default:
  /// 1 (periodic window) for dz >= 0, 2 for inverse legs dz < 0.
  int padding = 0;
  /// Largest fraction of spectral power allowed beyond the band limit before
  /// the request is rejected as aliasing-unsafe.
  double max_clipped_power = 1e-10;
};

/// Band-limited angular-spectrum propagation over a signed distance dz.
///
/// Applies H(u, v) = exp(i 2 pi dz sqrt(1/lambda^2 - u^2 - v^2)) on the padded
/// grid, zeroes evanescent components, and clamps |u|, |v| beyond the
/// aliasing-safe frequency for (N * padding, pitch, dz). Output keeps the input
/// grid. Throws AliasingError (with the padding that would suffice) when the
/// field carries significant power beyond that limit.
ComplexField angular_spectrum(const ComplexField& field, double dz,
                              const AngularSpectrumOptions& options = {});

/// Aliasing-safe spatial frequency for a padded window of n * padding samples.
double angular_spectrum_band_limit(std::size_t n, double pitch, double wavelength, double dz,
                                   int padding);

/// Single-transform Fresnel diffraction over dz > 0. The output grid has the
/// same sample count and pitch lambda * dz / (N * pitch). Unitary.
ComplexField fresnel_single(const ComplexField& field, double dz);

/// Fresnel transform for a signed distance. Negative dz back-propagates to a
/// virtual plane behind the input (output pitch lambda * |dz| / (N * pitch)).
ComplexField fresnel_transform(const ComplexField& field, double dz);

/// Multiplies by the paraxial lens phase exp(-i k (x^2 + y^2) / (2 f)).
ComplexField thin_lens(const ComplexField& field, double focal_length);

}  // namespace pbholo
