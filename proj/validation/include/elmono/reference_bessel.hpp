#pragma once

// Quad-precision (__float128) reference values for cylinder functions of
// orders 0 and 1. Deliberately written from scratch with a different crossover
// and arithmetic than specfun so that the two routes can be compared.

#include <complex>

namespace elmono::reference {

struct BesselJY01 {
  double j0;
  double j1;
  double y0;
  double y1;
};

// Real z > 0. Power series up to z = 25, Hankel expansion beyond.
BesselJY01 bessel_jy01(double z);

// H^(1)_order(z) for complex z with Re z >= 0, z != 0, order in {0, 1}.
// Power series up to |z| = 30, Hankel expansion beyond.
std::complex<double> hankel1(int order, std::complex<double> z);

}  // namespace elmono::reference
