#include "pbholo/field.hpp"

#include <algorithm>
#include <cmath>

#include "pbholo/error.hpp"

namespace pbholo {

ComplexField::ComplexField(std::size_t n, double pitch, double wavelength, double origin_x,
                           double origin_y)
    : n_(n), pitch_(pitch), wavelength_(wavelength), origin_x_(origin_x), origin_y_(origin_y) {
  if (n < 2 || n % 2 != 0) throw InputError("ComplexField: side count must be even and >= 2");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw InputError("ComplexField: pitch must be > 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw InputError("ComplexField: wavelength must be > 0");
  }
  data_.assign(n * n, Complex{});
}

double ComplexField::power() const {
  double sum = 0.0;
  for (const Complex& v : data_) sum += std::norm(v);
  return sum * pitch_ * pitch_;
}

ComplexField ComplexField::zeros_like() const {
  return ComplexField(n_, pitch_, wavelength_, origin_x_, origin_y_);
}

double max_abs_difference(const ComplexField& a, const ComplexField& b) {
  if (a.size() != b.size()) throw InputError("max_abs_difference: grid size mismatch");
  double worst = 0.0;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) worst = std::max(worst, std::abs(sa[i] - sb[i]));
  return worst;
}

}  // namespace pbholo
