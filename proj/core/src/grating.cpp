#include "pbholo/grating.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "pbholo/error.hpp"
#include "pbholo/phase.hpp"

namespace pbholo {
namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Longitudinal wavenumber kz / k0 written as q with modes exp(-q k0 z):
// Re(q) > 0 decays forward, propagating modes get Im(q) > 0.
Complex branch(Complex q2) {
  Complex q = std::sqrt(q2);
  if (q.real() < 0.0) q = -q;
  if (std::abs(q.real()) <= 1e-14 * std::abs(q) && q.imag() < 0.0) q = -q;
  return q;
}

// Toeplitz matrix of the Fourier coefficients of a two-valued profile:
// `inside` over |x| < f/2 of the period, `outside` elsewhere.
Mat toeplitz(Complex inside, Complex outside, double fill, int n_orders) {
  const int size = 2 * n_orders + 1;
  std::vector<Complex> coef(2 * size);
  for (int m = -(size - 1); m <= size - 1; ++m) {
    Complex c;
    if (m == 0) {
      c = outside + (inside - outside) * fill;
    } else {
      c = (inside - outside) * std::sin(kPi * m * fill) / (kPi * m);
    }
    coef[m + size - 1] = c;
  }
  Mat t(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) t(r, c) = coef[r - c + size - 1];
  }
  return t;
}

struct Smatrix {
  Mat s11, s12, s21, s22;
};

// Redheffer star product: `a` sits on the incident side of `b`.
Smatrix star(const Smatrix& a, const Smatrix& b) {
  const Eigen::Index n = a.s11.rows();
  const Mat id = Mat::Identity(n, n);
  const Eigen::PartialPivLU<Mat> lu1(id - b.s11 * a.s22);
  const Eigen::PartialPivLU<Mat> lu2(id - a.s22 * b.s11);
  Smatrix s;
  s.s11 = a.s11 + a.s12 * lu1.solve(b.s11 * a.s21);
  s.s12 = a.s12 * lu1.solve(b.s12);
  s.s21 = b.s21 * lu2.solve(a.s21);
  s.s22 = b.s22 + b.s21 * lu2.solve(a.s22 * b.s12);
  return s;
}

// Interface from a region with modes (Wa, Va) into (Wb, Vb). Tangential
// fields are [W W; -V V] times (forward, backward) amplitudes.
Smatrix interface_smatrix(const Mat& wa, const Mat& va, const Mat& wb, const Mat& vb) {
  const Eigen::Index n = wa.rows();
  Mat ma(2 * n, 2 * n), mb(2 * n, 2 * n);
  ma << wa, wa, -va, va;
  mb << wb, wb, -vb, vb;
  const Mat t = ma.partialPivLu().solve(mb);
  const Mat t11 = t.topLeftCorner(n, n);
  const Mat t12 = t.topRightCorner(n, n);
  const Mat t21 = t.bottomLeftCorner(n, n);
  const Mat t22 = t.bottomRightCorner(n, n);
  const Eigen::PartialPivLU<Mat> lu(t11);
  Smatrix s;
  s.s21 = lu.inverse();
  s.s11 = t21 * s.s21;
  s.s12 = t22 - s.s11 * t12;
  s.s22 = -lu.solve(t12);
  return s;
}

struct Region {
  Vec q;  // per-order kz / k0 (branch as above)
  Mat v;  // tangential H partner of identity W
};

Region homogeneous(Complex eps, const Vec& kx, Polarization pol) {
  const Eigen::Index n = kx.size();
  Region r{Vec(n), Mat::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    r.q(i) = branch(kx(i) * kx(i) - eps);
    r.v(i, i) = pol == Polarization::TE ? r.q(i) : r.q(i) / eps;
  }
  return r;
}

std::string describe(const GratingGeometry& g, double wavelength, int harmonics) {
  std::ostringstream s;
  s << "period " << g.period << " m, width " << g.width << " m, thickness " << g.thickness
    << " m, wavelength " << wavelength << " m, N = " << harmonics;
  return s.str();
}

}  // namespace

Material Material::constant(Complex index) {
  if (!(index.real() > 0.0) || index.imag() > 0.0 || !std::isfinite(std::abs(index))) {
    throw InputError("material index must have n > 0 and k >= 0 (n - jk)");
  }
  Material m;
  m.constant_ = index;
  return m;
}

Material Material::tabulated(DispersionTable table) {
  Material m;
  m.table_ = std::move(table);
  return m;
}

Complex Material::index(double wavelength) const {
  return table_ ? table_->index(wavelength) : constant_;
}

void GratingGeometry::validate() const {
  if (!(period > 0.0)) throw InputError("grating: period must be > 0");
  if (!(width >= 0.0) || width > period) throw InputError("grating: width must lie in [0, period]");
  if (!(thickness > 0.0)) throw InputError("grating: thickness must be > 0");
  if (!(n_substrate > 0.0) || !(n_cover > 0.0)) {
    throw InputError("grating: cover and substrate indices must be > 0");
  }
}

double DiffractionResult::sum_efficiency() const {
  double s = 0.0;
  for (std::size_t i = 0; i < orders.size(); ++i) s += reflection[i] + transmission[i];
  return s;
}

DiffractionResult rcwa_1d(const GratingGeometry& geom, double wavelength, Polarization pol,
                          int harmonics) {
  geom.validate();
  if (harmonics < 5) throw InputError("rcwa_1d: harmonic half-count must be >= 5");
  if (!(wavelength > 0.0)) throw InputError("rcwa_1d: wavelength must be > 0");

  const Complex nb = geom.beam.index(wavelength);
  const Complex ng = geom.gap.index(wavelength);
  const Complex eps_b = nb * nb;
  const Complex eps_g = ng * ng;
  const Complex eps_c = geom.n_cover * geom.n_cover;
  const Complex eps_s = geom.n_substrate * geom.n_substrate;
  const double fill = geom.fill_factor();

  const int size = 2 * harmonics + 1;
  Vec kx(size);
  for (int m = -harmonics; m <= harmonics; ++m) kx(m + harmonics) = m * wavelength / geom.period;
  const Mat kx2 = kx.cwiseProduct(kx).asDiagonal();
  const Mat id = Mat::Identity(size, size);

  const Mat e = toeplitz(eps_b, eps_g, fill, harmonics);
  Mat omega2;
  Mat a_inv;  // Toeplitz(1/eps), TM only
  if (pol == Polarization::TE) {
    omega2 = kx2 - e;
  } else {
    a_inv = toeplitz(1.0 / eps_b, 1.0 / eps_g, fill, harmonics);
    const Mat kek = kx.asDiagonal() * e.partialPivLu().solve(Mat(kx.asDiagonal()));
    omega2 = a_inv.partialPivLu().solve(kek - id);
  }

  Eigen::ComplexEigenSolver<Mat> solver(omega2);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("rcwa_1d: modal eigenproblem failed (" +
                         describe(geom, wavelength, harmonics) + ")");
  }
  const Mat w = solver.eigenvectors();
  Vec q(size);
  for (int i = 0; i < size; ++i) q(i) = branch(solver.eigenvalues()(i));
  Mat v = w * q.asDiagonal();
  if (pol == Polarization::TM) v = a_inv * v;
  if (!w.allFinite() || !v.allFinite()) {
    throw NumericalError("rcwa_1d: non-finite modes (" + describe(geom, wavelength, harmonics) +
                         ")");
  }

  const double k0t = kTwoPi / wavelength * geom.thickness;
  Mat x = Mat::Zero(size, size);
  for (int i = 0; i < size; ++i) x(i, i) = std::exp(-q(i) * k0t);

  const Region cover = homogeneous(eps_c, kx, pol);
  const Region sub = homogeneous(eps_s, kx, pol);
  const Smatrix top = interface_smatrix(id, cover.v, w, v);
  const Smatrix layer{Mat::Zero(size, size), x, x, Mat::Zero(size, size)};
  const Smatrix bottom = interface_smatrix(w, v, id, sub.v);
  const Smatrix total = star(star(top, layer), bottom);

  Vec inc = Vec::Zero(size);
  inc(harmonics) = 1.0;
  const Vec r = total.s11 * inc;
  const Vec t = total.s21 * inc;
  if (!r.allFinite() || !t.allFinite()) {
    throw NumericalError("rcwa_1d: non-finite amplitudes (" +
                         describe(geom, wavelength, harmonics) + ")");
  }

  // Power flux per order: Im(q) (TE) or Im(q / eps) (TM) times |amplitude|^2.
  auto flux = [&](Complex qq, Complex eps) {
    return pol == Polarization::TE ? qq.imag() : (qq / eps).imag();
  };
  const double incident = flux(cover.q(harmonics), eps_c);

  DiffractionResult res;
  res.pol = pol;
  res.harmonics = harmonics;
  res.orders.resize(size);
  res.reflection.resize(size);
  res.transmission.resize(size);
  for (int i = 0; i < size; ++i) {
    res.orders[i] = i - harmonics;
    res.reflection[i] = std::max(0.0, flux(cover.q(i), eps_c)) * std::norm(r(i)) / incident;
    res.transmission[i] = std::max(0.0, flux(sub.q(i), eps_s)) * std::norm(t(i)) / incident;
  }
  // TM amplitudes were solved for H_y; report tangential E like TE.
  const double h_to_e = pol == Polarization::TM ? geom.n_cover / geom.n_substrate : 1.0;
  res.t0 = t(harmonics) * h_to_e;
  res.r0 = pol == Polarization::TM ? -r(harmonics) : r(harmonics);
  return res;
}

double GratingResponse::retardance() const {
  return wrap_phase(std::arg(tm.t0) - std::arg(te.t0));
}

GratingResponse solve_grating(const GratingGeometry& geom, double wavelength, int harmonics) {
  return {rcwa_1d(geom, wavelength, Polarization::TE, harmonics),
          rcwa_1d(geom, wavelength, Polarization::TM, harmonics)};
}

Complex tmm_slab(Complex n_slab, double thickness, double wavelength, double n_cover,
                 double n_substrate) {
  if (!(thickness >= 0.0)) throw InputError("tmm_slab: thickness must be >= 0");
  if (!(wavelength > 0.0)) throw InputError("tmm_slab: wavelength must be > 0");
  const Complex nc = n_cover;
  const Complex ns = n_substrate;
  const Complex t12 = 2.0 * nc / (nc + n_slab);
  const Complex r12 = (nc - n_slab) / (nc + n_slab);
  const Complex t23 = 2.0 * n_slab / (n_slab + ns);
  const Complex r23 = (n_slab - ns) / (n_slab + ns);
  const Complex phase = std::exp(Complex(0.0, -kTwoPi / wavelength * thickness) * n_slab);
  return t12 * t23 * phase / (1.0 + r12 * r23 * phase * phase);
}

std::pair<Complex, Complex> emt_indices(double fill, Complex n_beam, Complex n_gap) {
  if (!(fill >= 0.0 && fill <= 1.0)) throw InputError("emt_indices: fill factor must be in [0, 1]");
  const Complex eb = n_beam * n_beam;
  const Complex eg = n_gap * n_gap;
  const Complex n_te = std::sqrt(fill * eb + (1.0 - fill) * eg);
  const Complex n_tm = 1.0 / std::sqrt(fill / eb + (1.0 - fill) / eg);
  return {n_te, n_tm};
}

std::vector<double> SweepRange::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw InputError("sweep range: need finite start <= stop");
  }
  if (stop == start) return {start};
  if (!(step > 0.0)) throw InputError("sweep range: step must be > 0");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

double sweep_objective(const GratingResponse& response, double weight_amplitude,
                       double weight_phase) {
  const double amp = std::abs(std::abs(response.t_te()) - std::abs(response.t_tm()));
  const double ph = std::abs(wrap_phase(response.retardance() - kPi));
  return weight_amplitude * amp + weight_phase * ph;
}

SweepResult design_sweep(const SweepOptions& options) {
  if (options.harmonics < 5) throw InputError("design_sweep: harmonic half-count must be >= 5");
  const double cutoff = options.wavelength / std::max(options.n_cover, options.n_substrate);
  SweepResult result;
  for (double p : options.period.values()) {
    if (options.subwavelength_filter && !(p < cutoff)) continue;
    for (double w : options.width.values()) {
      if (w < 0.0 || w > p) continue;
      for (double t : options.thickness.values()) {
        if (!(t > 0.0)) continue;
        result.points.push_back({p, w, t, {}, 0.0});
      }
    }
  }
  if (result.points.empty()) throw InputError("design_sweep: empty feasible set");
  // Fail early on wavelengths outside the material tables.
  (void)options.beam.index(options.wavelength);
  (void)options.gap.index(options.wavelength);

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(result.points.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < result.points.size(); i = next++) {
        SweepPoint& pt = result.points[i];
        GratingGeometry g;
        g.period = pt.period;
        g.width = pt.width;
        g.thickness = pt.thickness;
        g.beam = options.beam;
        g.gap = options.gap;
        g.n_substrate = options.n_substrate;
        g.n_cover = options.n_cover;
        pt.response = solve_grating(g, options.wavelength, options.harmonics);
        pt.objective = sweep_objective(pt.response, options.weight_amplitude, options.weight_phase);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = result.points.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work, i);
  work(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 1; i < result.points.size(); ++i) {
    if (result.points[i].objective < result.points[result.best].objective) result.best = i;
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, double wavelength) {
  out << "lambda_nm,period_nm,width_nm,thickness_nm,pol,t_abs,t_phase_rad,dphi_rad,sum_eff\n";
  out << std::setprecision(10);
  for (const SweepPoint& p : result.points) {
    const double dphi = p.response.retardance();
    for (const DiffractionResult* d : {&p.response.te, &p.response.tm}) {
      out << wavelength * 1e9 << ',' << p.period * 1e9 << ',' << p.width * 1e9 << ','
          << p.thickness * 1e9 << ',' << (d->pol == Polarization::TE ? "TE" : "TM") << ','
          << std::abs(d->t0) << ',' << std::arg(d->t0) << ',' << dphi << ','
          << d->sum_efficiency() << '\n';
    }
  }
}

}  // namespace pbholo
