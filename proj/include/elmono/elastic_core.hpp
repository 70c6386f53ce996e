#pragma once

// Isotropic elastic medium, incident plane waves, the Navier Green's tensor
// (real frequency and the imaginary unit) and its far-field kernels.
//
// The Green's tensor is evaluated through the kernel split
//   G(x, y) = phi1(r) I + phi2(r) rhat rhat^T,   r = |x - y|,
// and, for the boundary quadrature, phi_i(r) = L_i(r) ln r + smooth, where
// L_i are entire in r. Conventions: d_perp = (-d2, d1).

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace elmono {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

struct ElasticMedium {
  double lambda;
  double mu;
  double omega;
  double kp;
  double ks;
};

ElasticMedium make_medium(double lambda, double mu, double omega);

// Which frequency the single-layer kernels are evaluated at. The imaginary
// unit ignores the medium's omega and uses only lambda and mu.
enum class Frequency { real, imaginary_unit };

inline Vec2 perp(const Vec2& d) { return {-d.y(), d.x()}; }

struct PlaneWave {
  Vec2 direction;
  cplx ap;
  cplx as;
};

PlaneWave make_plane_wave(const Vec2& direction, cplx ap, cplx as);

// ap d e^{i kp d.x} + as d_perp e^{i ks d.x}
CVec2 incident_field(const PlaneWave& wave, const ElasticMedium& medium, const Vec2& x);

struct KernelSplit {
  cplx phi1;
  cplx phi2;
};

// phi1, phi2 at r > 0.
KernelSplit kernel_split(double r, const ElasticMedium& medium, Frequency freq = Frequency::real);

// Coefficients (L1, L2) of ln r in (phi1, phi2); valid for r >= 0.
KernelSplit log_coefficients(double r, const ElasticMedium& medium,
                             Frequency freq = Frequency::real);

// lim_{r->0} (phi1 - L1 ln r, phi2 - L2 ln r).
KernelSplit diagonal_constants(const ElasticMedium& medium, Frequency freq = Frequency::real);

CMat2 green_tensor(const Vec2& x, const Vec2& y, const ElasticMedium& medium);
CMat2 green_tensor_imag(const Vec2& x, const Vec2& y, const ElasticMedium& medium);

struct FarFieldPrefactors {
  cplx p;
  cplx s;
};

// e^{i pi/4} / ((lambda + 2 mu) sqrt(8 pi kp)) and e^{i pi/4} / (mu sqrt(8 pi ks)).
FarFieldPrefactors farfield_prefactors(const ElasticMedium& medium);

struct FarFieldKernel {
  CMat2 kp;
  CMat2 ks;
};

FarFieldKernel farfield_kernel(const Vec2& xhat, const Vec2& y, const ElasticMedium& medium);

using FieldSampler = std::function<CVec2(const Vec2&)>;

struct HelmholtzParts {
  CVec2 up;
  CVec2 us;
};

// up = -(1/kp^2) grad div u, us = (1/ks^2) curlvec curl u, by central
// differences with step h; curl u = d1 u2 - d2 u1, curlvec w = (d2 w, -d1 w).
HelmholtzParts helmholtz_components(const FieldSampler& field, const Vec2& x,
                                    const ElasticMedium& medium, double h);

}  // namespace elmono
