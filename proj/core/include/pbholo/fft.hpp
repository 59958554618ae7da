#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace pbholo {

using Complex = std::complex<double>;

enum class FftDirection { Forward, Backward };

/// In-place centred 2D DFT on an n x n row-major array (n even):
///   X[m] = sum_k x[k] exp(-+ 2 pi i k m / n),  k, m in [-n/2, n/2)
/// with index n/2 holding the zero coordinate in both domains. Unnormalized;
/// Forward uses the minus sign. Thread-safe (planning is serialized).
void fft2_centered(std::span<Complex> data, std::size_t n, FftDirection dir);

/// Centred 2D DFT scaled by 1/n, which makes it unitary.
void fft2_unitary(std::span<Complex> data, std::size_t n, FftDirection dir);

}  // namespace pbholo
