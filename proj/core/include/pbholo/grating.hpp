#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "pbholo/dispersion.hpp"

// Amplitudes in this header follow the engineering convention exp(+j w t):
// lossy media have index n - j k and forward waves go as exp(-j k z).
// std::conj() maps them onto the exp(-i w t) convention of the propagation code.

namespace pbholo {

/// Either a fixed complex index or a tabulated dispersion.
class Material {
 public:
  Material() = default;
  static Material constant(Complex index);
  static Material tabulated(DispersionTable table);

  Complex index(double wavelength) const;
  bool lossless(double wavelength) const { return index(wavelength).imag() == 0.0; }

 private:
  Complex constant_{1.0, 0.0};
  std::optional<DispersionTable> table_;
};

/// One period of a lamellar grating: a beam of width `width` centred in a
/// period filled with the gap material, on a substrate, under a cover.
/// Light arrives from the cover side.
struct GratingGeometry {
  double period = 230e-9;
  double width = 70e-9;
  double thickness = 155e-9;
  Material beam = Material::constant({3.9, 0.0});
  Material gap = Material::constant({1.0, 0.0});
  double n_substrate = 1.46;
  double n_cover = 1.0;

  double fill_factor() const { return width / period; }
  /// Widths 0 and period are accepted as the slab limits.
  void validate() const;
};

enum class Polarization { TE, TM };  // TE: E along the beams; TM: E across

struct DiffractionResult {
  Polarization pol = Polarization::TE;
  int harmonics = 0;                 // N: orders -N..N were retained
  Complex t0;                        // zeroth-order transmitted tangential E
  Complex r0;                        // zeroth-order reflected tangential E
  std::vector<int> orders;           // -N..N
  std::vector<double> reflection;    // efficiency per order
  std::vector<double> transmission;  // efficiency per order
  double sum_efficiency() const;
};

/// Fourier modal solution at normal incidence. `harmonics` is N >= 5.
/// Throws InputError for bad geometry or wavelengths outside a table and
/// NumericalError when the modal eigenproblem fails.
DiffractionResult rcwa_1d(const GratingGeometry& geom, double wavelength, Polarization pol,
                          int harmonics = 15);

struct GratingResponse {
  DiffractionResult te;
  DiffractionResult tm;
  Complex t_te() const { return te.t0; }
  Complex t_tm() const { return tm.t0; }
  /// arg(t_TM) - arg(t_TE), wrapped to [-pi, pi).
  double retardance() const;
};
GratingResponse solve_grating(const GratingGeometry& geom, double wavelength, int harmonics = 15);

/// Homogeneous slab between cover and substrate, two-interface Airy sum.
/// thickness == 0 gives the bare interface.
Complex tmm_slab(Complex n_slab, double thickness, double wavelength, double n_cover,
                 double n_substrate);

/// Zeroth-order effective indices (n_TE, n_TM) of a lamellar grating.
std::pair<Complex, Complex> emt_indices(double fill, Complex n_beam, Complex n_gap);

/// Inclusive grid start, start + step, ... <= stop (with a small tolerance).
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<double> values() const;
};

struct SweepOptions {
  SweepRange period{230e-9, 230e-9, 1e-9};
  SweepRange width{70e-9, 70e-9, 1e-9};
  SweepRange thickness{100e-9, 250e-9, 5e-9};
  double wavelength = 543e-9;
  Material beam = Material::constant({3.9, 0.0});
  Material gap = Material::constant({1.0, 0.0});
  double n_substrate = 1.46;
  double n_cover = 1.0;
  int harmonics = 15;
  double weight_amplitude = 1.0;
  double weight_phase = 1.0;
  /// Drop periods that let first orders propagate in cover or substrate.
  bool subwavelength_filter = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepPoint {
  double period = 0.0;
  double width = 0.0;
  double thickness = 0.0;
  GratingResponse response;
  double objective = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // lexicographic (period, width, thickness) order
  std::size_t best = 0;
};

/// Objective w1 * ||t_TE| - |t_TM|| + w2 * |wrap(dphi - pi)| over the grid.
/// Throws InputError when no grid point is feasible.
SweepResult design_sweep(const SweepOptions& options);
double sweep_objective(const GratingResponse& response, double weight_amplitude,
                       double weight_phase);

/// Two rows (TE, TM) per point under the fixed header
/// lambda_nm,period_nm,width_nm,thickness_nm,pol,t_abs,t_phase_rad,dphi_rad,sum_eff
void write_sweep_csv(std::ostream& out, const SweepResult& result, double wavelength);

}  // namespace pbholo
