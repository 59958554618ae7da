#include "pbholo/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "pbholo/error.hpp"

namespace pbholo {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Multiplying by (-1)^(r+c) before and after a standard DFT moves the zero
// coordinate to index n/2. The residual factor exp(-i pi n) is 1 for even n.
void checkerboard(std::span<Complex> data, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    Complex* row = data.data() + r * n;
    for (std::size_t c = (r & 1) ? 0 : 1; c < n; c += 2) row[c] = -row[c];
  }
}

}  // namespace

void fft2_centered(std::span<Complex> data, std::size_t n, FftDirection dir) {
  if (n < 2 || n % 2 != 0 || data.size() != n * n) {
    throw InputError("fft2_centered: need an even n x n array");
  }
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int sign = dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, sign,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("fft2_centered: FFTW planning failed");
  checkerboard(data, n);
  fftw_execute(plan);
  checkerboard(data, n);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void fft2_unitary(std::span<Complex> data, std::size_t n, FftDirection dir) {
  fft2_centered(data, n, dir);
  const double scale = 1.0 / static_cast<double>(n);
  for (Complex& v : data) v *= scale;
}

}  // namespace pbholo
