#include "elmono/elastic_core.hpp"

#include <cmath>
#include <numbers>

#include "elmono/errors.hpp"
#include "elmono/specfun.hpp"

namespace elmono {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// J1(z)/z, finite at z = 0.
double j1_over(double z) {
  if (z < 1e-6) return 0.5 - z * z / 16.0;
  return specfun::bessel_j(1, z) / z;
}

double i1_over(double x) {
  if (x < 1e-6) return 0.5 + x * x / 16.0;
  return specfun::modbessel_i(1, x) / x;
}

void check_distinct(const Vec2& x, const Vec2& y) {
  if ((x - y).norm() == 0.0) throw SingularityError("Green's tensor evaluated at x == y");
}

CMat2 assemble(const KernelSplit& k, const Vec2& d) {
  const Vec2 rhat = d / d.norm();
  return k.phi1 * CMat2::Identity() + k.phi2 * (rhat * rhat.transpose()).cast<cplx>();
}

// as = 1/sqrt(mu), ap = 1/sqrt(lambda + 2 mu): ks = i as, kp = i ap at omega = i.
struct ImagWavenumbers {
  double as;
  double ap;
};

ImagWavenumbers imag_wavenumbers(const ElasticMedium& m) {
  return {1.0 / std::sqrt(m.mu), 1.0 / std::sqrt(m.lambda + 2.0 * m.mu)};
}

}  // namespace

ElasticMedium make_medium(double lambda, double mu, double omega) {
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(omega)) {
    throw ParameterError("medium parameters must be finite");
  }
  if (!(mu > 0.0) || !(lambda + mu > 0.0)) {
    throw ParameterError("ellipticity requires mu > 0 and lambda + mu > 0");
  }
  if (!(omega > 0.0)) throw ParameterError("omega must be positive");
  return {lambda, mu, omega, omega / std::sqrt(lambda + 2.0 * mu), omega / std::sqrt(mu)};
}

PlaneWave make_plane_wave(const Vec2& direction, cplx ap, cplx as) {
  if (std::abs(direction.norm() - 1.0) > 1e-14) {
    throw ParameterError("plane wave direction must be a unit vector");
  }
  if (ap == 0.0 && as == 0.0) throw ParameterError("plane wave amplitudes are both zero");
  return {direction, ap, as};
}

CVec2 incident_field(const PlaneWave& wave, const ElasticMedium& medium, const Vec2& x) {
  const double phase = wave.direction.dot(x);
  const cplx ep = std::exp(kI * medium.kp * phase);
  const cplx es = std::exp(kI * medium.ks * phase);
  return wave.ap * ep * wave.direction.cast<cplx>() + wave.as * es * perp(wave.direction).cast<cplx>();
}

KernelSplit kernel_split(double r, const ElasticMedium& m, Frequency freq) {
  if (!(r > 0.0)) throw SingularityError("kernel_split requires r > 0");
  if (freq == Frequency::imaginary_unit) {
    const auto [as, ap] = imag_wavenumbers(m);
    const double k0s = specfun::modbessel_k(0, as * r);
    const double k0p = specfun::modbessel_k(0, ap * r);
    const double k1s = specfun::modbessel_k(1, as * r);
    const double k1p = specfun::modbessel_k(1, ap * r);
    const double diff = (as * k1s - ap * k1p) / r;
    const double phi1 = k0s / (2.0 * kPi * m.mu) + diff / (2.0 * kPi);
    const double phi2 = -diff / kPi - (as * as * k0s - ap * ap * k0p) / (2.0 * kPi);
    return {phi1, phi2};
  }
  const auto bs = specfun::bessel_jy01(m.ks * r);
  const auto bp = specfun::bessel_jy01(m.kp * r);
  const cplx h0s{bs.order0.j, bs.order0.y};
  const cplx h1s{bs.order1.j, bs.order1.y};
  const cplx h0p{bp.order0.j, bp.order0.y};
  const cplx h1p{bp.order1.j, bp.order1.y};
  const double w2 = m.omega * m.omega;
  const cplx diff = (m.ks * h1s - m.kp * h1p) / r;
  const cplx phi1 = kI / (4.0 * m.mu) * h0s - kI / (4.0 * w2) * diff;
  const cplx phi2 = kI / (4.0 * w2) * (2.0 * diff - m.ks * m.ks * h0s + m.kp * m.kp * h0p);
  return {phi1, phi2};
}

KernelSplit log_coefficients(double r, const ElasticMedium& m, Frequency freq) {
  if (!(r >= 0.0)) throw ParameterError("log_coefficients requires r >= 0");
  if (freq == Frequency::imaginary_unit) {
    const auto [as, ap] = imag_wavenumbers(m);
    const double i0s = specfun::modbessel_i(0, as * r);
    const double i0p = specfun::modbessel_i(0, ap * r);
    const double diff = as * as * i1_over(as * r) - ap * ap * i1_over(ap * r);
    const double l1 = -i0s / (2.0 * kPi * m.mu) + diff / (2.0 * kPi);
    const double l2 = -diff / kPi + (as * as * i0s - ap * ap * i0p) / (2.0 * kPi);
    return {l1, l2};
  }
  const double ks2 = m.ks * m.ks;
  const double kp2 = m.kp * m.kp;
  const double w2 = m.omega * m.omega;
  const double j0s = specfun::bessel_j(0, m.ks * r);
  const double j0p = specfun::bessel_j(0, m.kp * r);
  const double diff = ks2 * j1_over(m.ks * r) - kp2 * j1_over(m.kp * r);
  const double l1 = -j0s / (2.0 * kPi * m.mu) + diff / (2.0 * kPi * w2);
  const double l2 = -(2.0 * diff - ks2 * j0s + kp2 * j0p) / (2.0 * kPi * w2);
  return {l1, l2};
}

KernelSplit diagonal_constants(const ElasticMedium& m, Frequency freq) {
  constexpr double g = specfun::kEulerGamma;
  if (freq == Frequency::imaginary_unit) {
    const auto [as, ap] = imag_wavenumbers(m);
    const double ls = std::log(as / 2.0) + g;
    const double lp = std::log(ap / 2.0) + g;
    const double c1 = (-as * as * ls + 0.5 * as * as * (ls - 0.5) - 0.5 * ap * ap * (lp - 0.5)) /
                      (2.0 * kPi);
    const double c2 = (as * as - ap * ap) / (4.0 * kPi);
    return {c1, c2};
  }
  const double ks2 = m.ks * m.ks;
  const double kp2 = m.kp * m.kp;
  const double w2 = m.omega * m.omega;
  const double ls = std::log(m.ks / 2.0) + g;
  const double lp = std::log(m.kp / 2.0) + g;
  const cplx c1 = kI / (4.0 * m.mu) * (1.0 + 2.0 * kI / kPi * ls) -
                  kI / (4.0 * w2) *
                      (0.5 * (ks2 - kp2) + kI / kPi * (ks2 * (ls - 0.5) - kp2 * (lp - 0.5)));
  const double c2 = (ks2 - kp2) / (4.0 * kPi * w2);
  return {c1, c2};
}

CMat2 green_tensor(const Vec2& x, const Vec2& y, const ElasticMedium& medium) {
  check_distinct(x, y);
  const Vec2 d = x - y;
  return assemble(kernel_split(d.norm(), medium, Frequency::real), d);
}

CMat2 green_tensor_imag(const Vec2& x, const Vec2& y, const ElasticMedium& medium) {
  check_distinct(x, y);
  const Vec2 d = x - y;
  return assemble(kernel_split(d.norm(), medium, Frequency::imaginary_unit), d);
}

FarFieldPrefactors farfield_prefactors(const ElasticMedium& m) {
  const cplx phase = std::exp(kI * (kPi / 4.0));
  return {phase / ((m.lambda + 2.0 * m.mu) * std::sqrt(8.0 * kPi * m.kp)),
          phase / (m.mu * std::sqrt(8.0 * kPi * m.ks))};
}

FarFieldKernel farfield_kernel(const Vec2& xhat, const Vec2& y, const ElasticMedium& medium) {
  if (std::abs(xhat.norm() - 1.0) > 1e-12) {
    throw ParameterError("farfield_kernel: observation direction must be a unit vector");
  }
  const auto pre = farfield_prefactors(medium);
  const Eigen::Matrix2d proj = xhat * xhat.transpose();
  const double phase = xhat.dot(y);
  const cplx ep = pre.p * std::exp(-kI * medium.kp * phase);
  const cplx es = pre.s * std::exp(-kI * medium.ks * phase);
  return {ep * proj.cast<cplx>(), es * (Eigen::Matrix2d::Identity() - proj).cast<cplx>()};
}

HelmholtzParts helmholtz_components(const FieldSampler& field, const Vec2& x,
                                    const ElasticMedium& medium, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  const Vec2 e1(h, 0.0);
  const Vec2 e2(0.0, h);
  const CVec2 f0 = field(x);
  const CVec2 d11 = (field(x + e1) - 2.0 * f0 + field(x - e1)) / (h * h);
  const CVec2 d22 = (field(x + e2) - 2.0 * f0 + field(x - e2)) / (h * h);
  const CVec2 d12 =
      (field(x + e1 + e2) - field(x + e1 - e2) - field(x - e1 + e2) + field(x - e1 - e2)) /
      (4.0 * h * h);
  const CVec2 grad_div(d11(0) + d12(1), d12(0) + d22(1));
  const CVec2 curl_curl(d12(1) - d22(0), d12(0) - d11(1));
  return {-grad_div / (medium.kp * medium.kp), curl_curl / (medium.ks * medium.ks)};
}

}  // namespace elmono
