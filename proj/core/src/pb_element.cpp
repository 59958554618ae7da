#include "pbholo/pb_element.hpp"

#include <cmath>

#include "pbholo/error.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {

double PBElement::retardance() const {
  return wrap_phase(std::arg(t_tm) - std::arg(t_te));
}

void PBElement::validate() const {
  constexpr double kSlack = 1e-12;
  if (!std::isfinite(t_te.real()) || !std::isfinite(t_te.imag()) ||
      !std::isfinite(t_tm.real()) || !std::isfinite(t_tm.imag()) || !std::isfinite(theta)) {
    throw InputError("PBElement: non-finite parameter");
  }
  if (std::abs(t_te) > 1.0 + kSlack || std::abs(t_tm) > 1.0 + kSlack) {
    throw InputError("PBElement: |t| > 1 violates passivity");
  }
}

PBElement PBElement::from_retardance(double abs_te, double abs_tm, double dphi, double theta) {
  return {Complex(abs_te, 0.0), std::polar(abs_tm, dphi), theta};
}

PBOutput pb_output(const PBElement& elem, Helicity input) {
  elem.validate();
  const int sign = input == Helicity::Right ? 1 : -1;
  PBOutput out;
  out.co_amp = 0.5 * (elem.t_te + elem.t_tm);
  out.cross_amp = 0.5 * (elem.t_te - elem.t_tm) * std::polar(1.0, sign * 2.0 * elem.theta);
  out.cross_phase_sign = sign;
  return out;
}

}  // namespace pbholo
