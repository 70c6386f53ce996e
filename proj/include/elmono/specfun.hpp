#pragma once

// Cylinder functions of orders 0 and 1 for real positive arguments.
//
// J and Y switch from their power series (with the logarithmic term for Y)
// to the Hankel large-argument expansion at kAsymptoticCrossover. K uses its
// log series for small x and the exponentially convergent trapezoidal rule on
// K_v(x) = int_0^inf exp(-x cosh t) cosh(v t) dt beyond kModifiedCrossover.
// All functions are pure.

#include <complex>

namespace elmono::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kAsymptoticCrossover = 12.0;
inline constexpr double kModifiedCrossover = 2.0;

struct BesselJY {
  double j;
  double y;
};

// Both orders at once; the Green's tensor always needs the pair.
struct BesselPair {
  BesselJY order0;
  BesselJY order1;
};

BesselJY bessel_jy(int order, double z);
BesselPair bessel_jy01(double z);

std::complex<double> hankel1(int order, double z);

double modbessel_k(int order, double x);
double modbessel_i(int order, double x);

// J only, for the smooth log-coefficient parts of the kernel split. Valid for
// all z >= 0 (J is entire), unlike bessel_jy which rejects z == 0.
double bessel_j(int order, double z);

}  // namespace elmono::specfun
