#include "elmono/reference_bessel.hpp"

#include <quadmath.h>

#include <stdexcept>

namespace elmono::reference {
namespace {

using quad = __float128;
using cquad = __complex128;

const quad kPiQ = M_PIq;
const quad kGammaQ = 0.5772156649015328606065120900824024310422Q;

cquad make(quad re, quad im) {
  cquad z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}

// J_v and Y_v (v = 0, 1) by their ascending series at complex z.
void series(cquad z, cquad& j0, cquad& j1, cquad& y0, cquad& y1) {
  const cquad half = z / 2;
  const cquad q = -half * half;
  const cquad log_term = clogq(half) + kGammaQ;

  cquad t0 = 1;
  cquad t1 = half;
  cquad s_j0 = t0;
  cquad s_j1 = t1;
  cquad s_y0 = 0;
  cquad s_y1 = t1 * (1 - 2 * kGammaQ);
  quad harmonic = 0;
  for (int k = 1; k < 400; ++k) {
    t0 = t0 * q / (quad(k) * k);
    t1 = t1 * q / (quad(k) * (k + 1));
    harmonic += quad(1) / k;
    s_j0 += t0;
    s_j1 += t1;
    s_y0 -= harmonic * t0;
    s_y1 += (2 * harmonic + quad(1) / (k + 1) - 2 * kGammaQ) * t1;
    if (cabsq(t0) < 1e-40Q && cabsq(t1) < 1e-40Q) break;
  }
  j0 = s_j0;
  j1 = s_j1;
  y0 = (2 / kPiQ) * (log_term * s_j0 + s_y0);
  y1 = (2 / kPiQ) * (clogq(half) * s_j1) - 2 / (kPiQ * z) - s_y1 / kPiQ;
}

// H^(1)_v(z) ~ sqrt(2/(pi z)) exp(i(z - v pi/2 - pi/4)) sum_k i^k a_k(v) / z^k
cquad hankel_asymptotic(int order, cquad z) {
  const quad mu = 4 * order * order;
  cquad term = 1;
  cquad sum = 1;
  quad last = 1;
  const cquad iz = make(0, 1) / z;
  for (int k = 1; k < 200; ++k) {
    const quad odd = 2 * k - 1;
    term = term * iz * ((mu - odd * odd) / (8 * quad(k)));
    const quad size = cabsq(term);
    if (size > last) break;
    last = size;
    sum += term;
    if (size < 1e-36Q) break;
  }
  const cquad phase = z - (order * kPiQ / 2 + kPiQ / 4);
  return csqrtq(2 / (kPiQ * z)) * cexpq(make(0, 1) * phase) * sum;
}

}  // namespace

BesselJY01 bessel_jy01(double z) {
  if (!(z > 0.0)) throw std::domain_error("reference bessel_jy01: z must be positive");
  if (z <= 25.0) {
    cquad j0, j1, y0, y1;
    series(make(z, 0), j0, j1, y0, y1);
    return {static_cast<double>(crealq(j0)), static_cast<double>(crealq(j1)),
            static_cast<double>(crealq(y0)), static_cast<double>(crealq(y1))};
  }
  const cquad h0 = hankel_asymptotic(0, make(z, 0));
  const cquad h1 = hankel_asymptotic(1, make(z, 0));
  return {static_cast<double>(crealq(h0)), static_cast<double>(crealq(h1)),
          static_cast<double>(cimagq(h0)), static_cast<double>(cimagq(h1))};
}

std::complex<double> hankel1(int order, std::complex<double> z) {
  if (order != 0 && order != 1) throw std::invalid_argument("reference hankel1: order 0 or 1");
  if (z.real() < 0.0 || std::abs(z) == 0.0) {
    throw std::domain_error("reference hankel1: need Re z >= 0 and z != 0");
  }
  const cquad zq = make(z.real(), z.imag());
  cquad h;
  if (std::abs(z) <= 30.0) {
    cquad j0, j1, y0, y1;
    series(zq, j0, j1, y0, y1);
    const cquad i = make(0, 1);
    h = order == 0 ? j0 + i * y0 : j1 + i * y1;
  } else {
    h = hankel_asymptotic(order, zq);
  }
  return {static_cast<double>(crealq(h)), static_cast<double>(cimagq(h))};
}

}  // namespace elmono::reference
