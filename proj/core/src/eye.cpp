#include "pbholo/eye.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pbholo/error.hpp"
#include "pbholo/fft.hpp"
#include "pbholo/field.hpp"
#include "pbholo/metrics.hpp"

namespace pbholo {
namespace {

void check_registration(const PhaseMap& phase, const DisplayPattern& mask) {
  if (phase.rows() != phase.cols()) throw InputError("simulation: phase map must be square");
  if (phase.rows() < 2 || phase.rows() % 2 != 0) {
    throw InputError("simulation: phase map side must be even");
  }
  if (mask.rows() == 0 || mask.cols() == 0) throw InputError("simulation: empty display mask");
  if (mask.rows() > phase.rows() || mask.cols() > phase.cols()) {
    throw InputError("simulation: display grid finer than the phase lattice");
  }
}

// One pass of "aperture field -> quadratic phase -> centred DFT -> |.|^2"
// shared by the retina and conjugate renderers. A thin lens of focal length f
// followed by Fresnel propagation over z contributes the input chirp
// exp(i pi r^2 / lambda * (1/z - 1/f)); `curvature` holds that bracket.
class Renderer {
 public:
  Renderer(const PhaseMap& phase, const DisplayPattern& mask, const PBElement& elem,
           const SimulationOptions& options, double curvature, double distance)
      : n_(phase.rows()),
        pitch_(phase.pitch()),
        aperture_(static_cast<double>(phase.rows()) * phase.pitch()),
        mask_(mask),
        distance_(distance) {
    const int sign = options.input == Helicity::Right ? 1 : -1;
    const PBOutput base = pb_output(PBElement{elem.t_te, elem.t_tm, 0.0}, options.input);
    cross_ = base.cross_amp;
    co_ = options.analyzer ? Complex{} : base.co_amp;

    const double lambda = options.wavelength;
    cross_kernel_.resize(n_ * n_);
    if (co_ != Complex{}) co_kernel_.resize(n_ * n_);
    row_cell_.resize(n_);
    col_cell_.resize(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      const double y = phase.y(r);
      row_cell_[r] = cell_index(y, aperture_, mask.rows());
      for (std::size_t c = 0; c < n_; ++c) {
        const double x = phase.x(c);
        const double chirp = kPi / lambda * (x * x + y * y) * curvature;
        // theta = phi / 2, so the converted channel carries exp(i s phi).
        cross_kernel_[r * n_ + c] = cross_ * std::polar(1.0, sign * phase(r, c) + chirp);
        if (!co_kernel_.empty()) co_kernel_[r * n_ + c] = co_ * std::polar(1.0, chirp);
      }
    }
    for (std::size_t c = 0; c < n_; ++c) col_cell_[c] = cell_index(phase.x(c), aperture_, mask.cols());

    const double s = pitch_ * pitch_ / (lambda * std::abs(distance));
    intensity_scale_ = s * s;
    out_pitch_ = lambda * std::abs(distance) / (static_cast<double>(n_) * pitch_);
  }

  RetinaImage render(Emission emission, ImagePlane plane) const {
    RetinaImage img;
    img.n = n_;
    img.pitch = out_pitch_;
    img.plane = plane;
    img.intensity.assign(n_ * n_, 0.0);
    std::vector<Complex> buf(n_ * n_);

    auto accumulate = [&](const std::vector<Complex>& kernel, auto&& lit, double& power) {
      std::fill(buf.begin(), buf.end(), Complex{});
      for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < n_; ++c) {
          if (lit(row_cell_[r], col_cell_[c])) buf[r * n_ + c] = kernel[r * n_ + c];
        }
      }
      fft2_centered(buf, n_, distance_ > 0.0 ? FftDirection::Forward : FftDirection::Backward);
      for (std::size_t i = 0; i < buf.size(); ++i) {
        const double v = std::norm(buf[i]) * intensity_scale_;
        img.intensity[i] += v;
        power += v;
      }
    };

    double cross_power = 0.0;
    double co_power = 0.0;
    if (emission == Emission::Coherent) {
      auto lit = [&](std::size_t i, std::size_t j) { return mask_.lit(i, j); };
      if (cross_ != Complex{}) accumulate(cross_kernel_, lit, cross_power);
      if (!co_kernel_.empty()) accumulate(co_kernel_, lit, co_power);
    } else {
      for (std::size_t i = 0; i < mask_.rows(); ++i) {
        for (std::size_t j = 0; j < mask_.cols(); ++j) {
          if (!mask_.lit(i, j)) continue;
          auto only = [i, j](std::size_t a, std::size_t b) { return a == i && b == j; };
          if (cross_ != Complex{}) accumulate(cross_kernel_, only, cross_power);
          if (!co_kernel_.empty()) accumulate(co_kernel_, only, co_power);
        }
      }
    }
    img.zeroth_order_power = co_power * out_pitch_ * out_pitch_;
    return img;
  }

 private:
  std::size_t n_;
  double pitch_;
  double aperture_;
  DisplayPattern mask_;
  double distance_;
  Complex cross_;
  Complex co_;
  std::vector<Complex> cross_kernel_;
  std::vector<Complex> co_kernel_;
  std::vector<std::size_t> row_cell_;
  std::vector<std::size_t> col_cell_;
  double intensity_scale_ = 0.0;
  double out_pitch_ = 0.0;
};

}  // namespace

void EyeGeometry::validate() const {
  if (!(focal_length > 0.0)) throw InputError("eye: focal length must be > 0");
  if (!(retina_distance > 0.0)) throw InputError("eye: retina distance must be > 0");
  if (accommodation && !(*accommodation > 0.0)) {
    throw InputError("eye: accommodation focal length must be > 0");
  }
}

double RetinaImage::total_power() const {
  return std::accumulate(intensity.begin(), intensity.end(), 0.0) * pitch * pitch;
}

RetinaImage eye_simulate(const PhaseMap& phase, const DisplayPattern& mask, const EyeGeometry& eye,
                         const PBElement& elem, const SimulationOptions& options) {
  check_registration(phase, mask);
  eye.validate();
  const double f = eye.effective_focal_length();
  const double z = eye.retina_distance;
  const Renderer renderer(phase, mask, elem, options, 1.0 / z - 1.0 / f, z);
  return renderer.render(options.emission, ImagePlane::Retina);
}

RetinaImage conjugate_reconstruct(const PhaseMap& phase, const DisplayPattern& mask,
                                  double conjugate_distance, const PBElement& elem,
                                  const SimulationOptions& options) {
  check_registration(phase, mask);
  if (!(conjugate_distance > 0.0)) throw InputError("conjugate distance must be > 0");
  SimulationOptions conv = options;
  conv.analyzer = true;  // only the converted channel forms the virtual image
  const double z = -conjugate_distance;
  const Renderer renderer(phase, mask, elem, conv, 1.0 / z, z);
  return renderer.render(options.emission, ImagePlane::Conjugate);
}

AccommodationSweep accommodation_sweep(const PhaseMap& phase, const DisplayPattern& mask,
                                       const EyeGeometry& eye, const PBElement& elem,
                                       const SystemGeometry& geom, double f_min, double f_max,
                                       int steps, const SimulationOptions& options) {
  if (!(f_min > 0.0) || !(f_max > f_min)) throw InputError("accommodation sweep: empty focal range");
  if (steps < 3) throw InputError("accommodation sweep: need at least 3 steps");
  if (mask.lit_count() == 0) throw InputError("accommodation sweep: display mask is dark");
  check_registration(phase, mask);

  const TargetLattice lattice{geom.with_pixels(mask), ImagePlane::Retina, eye.retina_distance};
  const SystemGeometry cells = geom.with_pixels(mask);
  const double core =
      options.wavelength * eye.retina_distance / std::min(cells.cell_width(), cells.cell_height());
  AccommodationSweep sweep;
  double best = -1.0;
  for (int s = 0; s < steps; ++s) {
    const double f = f_min + (f_max - f_min) * s / (steps - 1);
    EyeGeometry probe = eye;
    probe.accommodation = f;
    SimulationOptions coherent = options;
    coherent.emission = Emission::Coherent;
    const RetinaImage img = eye_simulate(phase, mask, probe, elem, coherent);

    const double total = img.total_power();
    double peaks = 0.0;
    for (std::size_t i = 0; i < mask.rows(); ++i) {
      for (std::size_t j = 0; j < mask.cols(); ++j) {
        if (mask.lit(i, j)) peaks += box_energy(img, lattice.center_x(j), lattice.center_y(i), core);
      }
    }
    const double sharp = total > 0.0 ? peaks / total : 0.0;
    sweep.focal_lengths.push_back(f);
    sweep.sharpness.push_back(sharp);
    if (sharp > best) {
      best = sharp;
      sweep.best_focal_length = f;
    }
  }
  return sweep;
}

}  // namespace pbholo
