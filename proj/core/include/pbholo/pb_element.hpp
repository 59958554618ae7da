#pragma once

#include <complex>

namespace pbholo {

using Complex = std::complex<double>;

enum class Helicity { Right, Left };

/// Local birefringent scatterer: complex field transmissions along (TE) and
/// across (TM) the nanobeam axis, rotated in-plane by theta.
struct PBElement {
  Complex t_te{1.0, 0.0};
  Complex t_tm{-1.0, 0.0};
  double theta = 0.0;

  /// arg(t_tm) - arg(t_te), wrapped to [-pi, pi).
  double retardance() const;
  /// Passivity check |t| <= 1 for both axes; throws InputError.
  void validate() const;

  /// Half-waveplate element with unit transmission.
  static PBElement ideal(double theta = 0.0) { return {{1.0, 0.0}, {-1.0, 0.0}, theta}; }
  /// Element built from magnitudes and a TM-minus-TE retardance.
  static PBElement from_retardance(double abs_te, double abs_tm, double dphi, double theta = 0.0);
};

/// Output of one element for a circularly polarized input in the helicity
/// basis. The co-polarized channel carries (t_te + t_tm)/2; the converted
/// channel carries (t_te - t_tm)/2 * exp(i * sign * 2 * theta) with sign = +1
/// for a right-handed input and -1 for a left-handed one.
struct PBOutput {
  Complex co_amp;
  Complex cross_amp;
  int cross_phase_sign = 1;

  double eta_e() const { return std::norm(co_amp); }
  double eta_conv() const { return std::norm(cross_amp); }
};

PBOutput pb_output(const PBElement& elem, Helicity input);

}  // namespace pbholo
