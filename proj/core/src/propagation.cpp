#include "pbholo/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "pbholo/error.hpp"
#include "pbholo/fft.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {
namespace {

std::size_t chebyshev_radius(std::size_t r, std::size_t c, std::size_t m) {
  const auto half = static_cast<long>(m / 2);
  const auto dr = static_cast<std::size_t>(std::labs(static_cast<long>(r) - half));
  const auto dc = static_cast<std::size_t>(std::labs(static_cast<long>(c) - half));
  return std::max(dr, dc);
}

void require_centred(const ComplexField& field, const char* op) {
  if (field.origin_x() != 0.0 || field.origin_y() != 0.0) {
    throw InputError(std::string(op) + ": input grid must be centred on the axis");
  }
}

}  // namespace

double angular_spectrum_band_limit(std::size_t n, double pitch, double wavelength, double dz,
                                   int padding) {
  const double window = static_cast<double>(n) * padding * pitch;
  const double a = 2.0 * dz / window;
  return 1.0 / (wavelength * std::sqrt(a * a + 1.0));
}

ComplexField angular_spectrum(const ComplexField& field, double dz,
                              const AngularSpectrumOptions& options) {
  if (!std::isfinite(dz)) throw InputError("angular_spectrum: non-finite distance");
  if (dz == 0.0) return field;
  const int padding = options.padding > 0 ? options.padding : (dz < 0.0 ? 2 : 1);

  const std::size_t n = field.size();
  const std::size_t m = n * static_cast<std::size_t>(padding);
  const std::size_t offset = (m - n) / 2;
  const double pitch = field.pitch();
  const double lambda = field.wavelength();

  std::vector<Complex> buf(m * m);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy_n(&field(r, 0), n, buf.begin() + static_cast<long>((r + offset) * m + offset));
  }
  fft2_centered(buf, m, FftDirection::Forward);

  const double du = 1.0 / (static_cast<double>(m) * pitch);
  const double inv_l2 = 1.0 / (lambda * lambda);
  const double limit = angular_spectrum_band_limit(n, pitch, lambda, std::abs(dz), padding);

  // Power outside the band limit, binned by Chebyshev frequency radius so the
  // padding that would admit it can be reported.
  std::vector<double> radial(m / 2 + 1, 0.0);
  double total = 0.0;
  double clipped = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double v = (static_cast<double>(r) - static_cast<double>(m / 2)) * du;
    for (std::size_t c = 0; c < m; ++c) {
      const double u = (static_cast<double>(c) - static_cast<double>(m / 2)) * du;
      Complex& s = buf[r * m + c];
      const double p = std::norm(s);
      const double arg = inv_l2 - u * u - v * v;
      if (arg <= 0.0) {
        s = 0.0;
        continue;
      }
      total += p;
      radial[chebyshev_radius(r, c, m)] += p;
      if (std::abs(u) > limit || std::abs(v) > limit) {
        clipped += p;
        s = 0.0;
        continue;
      }
      s *= std::polar(1.0, kTwoPi * dz * std::sqrt(arg));
    }
  }

  if (total > 0.0 && clipped > options.max_clipped_power * total) {
    double tail = 0.0;
    std::size_t needed = radial.size() - 1;
    for (std::size_t i = radial.size(); i-- > 0;) {
      if (tail + radial[i] > options.max_clipped_power * total) {
        needed = i;
        break;
      }
      tail += radial[i];
    }
    const double u_req = static_cast<double>(needed) * du;
    const double s = 1.0 / (lambda * u_req);
    int required = 0;
    if (s > 1.0) {
      required = static_cast<int>(std::ceil(2.0 * std::abs(dz) /
                                            (static_cast<double>(n) * pitch * std::sqrt(s * s - 1.0))));
      required = std::max(required, padding + 1);
    }
    std::ostringstream msg;
    msg << "angular_spectrum: dz = " << dz << " m aliases on a " << n << "^2 grid at padding "
        << padding << " (" << clipped / total << " of spectral power beyond the band limit); "
        << "required padding: " << required;
    throw AliasingError(msg.str(), required);
  }

  fft2_centered(buf, m, FftDirection::Backward);
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  ComplexField out = field.zeros_like();
  for (std::size_t r = 0; r < n; ++r) {
    const Complex* src = buf.data() + (r + offset) * m + offset;
    for (std::size_t c = 0; c < n; ++c) out(r, c) = src[c] * scale;
  }
  return out;
}

ComplexField fresnel_transform(const ComplexField& field, double dz) {
  if (!std::isfinite(dz) || dz == 0.0) {
    throw InputError("fresnel_transform: distance must be finite and non-zero");
  }
  require_centred(field, "fresnel_transform");
  const std::size_t n = field.size();
  const double lambda = field.wavelength();
  const double pitch_in = field.pitch();
  const double pitch_out = lambda * std::abs(dz) / (static_cast<double>(n) * pitch_in);
  const double k = kTwoPi / lambda;

  ComplexField out(n, pitch_out, lambda);
  auto data = out.samples();
  for (std::size_t r = 0; r < n; ++r) {
    const double y = field.y(r);
    for (std::size_t c = 0; c < n; ++c) {
      const double x = field.x(c);
      data[r * n + c] = field(r, c) * std::polar(1.0, k * (x * x + y * y) / (2.0 * dz));
    }
  }
  fft2_centered(data, n, dz > 0.0 ? FftDirection::Forward : FftDirection::Backward);

  const Complex prefactor =
      std::polar(1.0, k * dz) / Complex(0.0, lambda * dz) * (pitch_in * pitch_in);
  for (std::size_t r = 0; r < n; ++r) {
    const double y = out.y(r);
    for (std::size_t c = 0; c < n; ++c) {
      const double x = out.x(c);
      data[r * n + c] *= prefactor * std::polar(1.0, k * (x * x + y * y) / (2.0 * dz));
    }
  }
  return out;
}

ComplexField fresnel_single(const ComplexField& field, double dz) {
  if (!(dz > 0.0)) {
    throw InputError("fresnel_single: dz must be > 0 (use angular_spectrum for inverse legs)");
  }
  return fresnel_transform(field, dz);
}

ComplexField thin_lens(const ComplexField& field, double focal_length) {
  if (focal_length == 0.0 || std::isnan(focal_length)) {
    throw InputError("thin_lens: focal length must be non-zero");
  }
  ComplexField out = field;
  if (std::isinf(focal_length)) return out;
  const double k = kTwoPi / field.wavelength();
  for (std::size_t r = 0; r < field.size(); ++r) {
    const double y = field.y(r);
    for (std::size_t c = 0; c < field.size(); ++c) {
      const double x = field.x(c);
      out(r, c) *= std::polar(1.0, -k * (x * x + y * y) / (2.0 * focal_length));
    }
  }
  return out;
}

}  // namespace pbholo
