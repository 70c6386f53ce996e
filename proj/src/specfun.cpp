#include "elmono/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "elmono/errors.hpp"

namespace elmono::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kGammaL = 0.577215664901532860606512090082402431L;
constexpr double kEps = 1e-20;
constexpr int kMaxTerms = 200;

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw ParameterError("only orders 0 and 1 are supported, got " + std::to_string(order));
  }
}

void check_positive(double z, const char* fn) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite");
  }
}

// sum_k (-1)^k (z/2)^(2k+v) / (k! (k+v)!)
// Accumulated in long double: near the crossover the terms reach ~1e4.
long double j_series(int order, long double z) {
  const long double q = -0.25L * z * z;
  long double term = order == 0 ? 1.0L : 0.5L * z;
  long double sum = term;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= q / (static_cast<long double>(k) * (k + order));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum) && k > 2) break;
  }
  return sum;
}

// Y0 = (2/pi)(ln(z/2)+gamma) J0 + (2/pi) sum_{k>=1} (-1)^(k+1) H_k (z^2/4)^k / (k!)^2
long double y0_series(long double z, long double j0) {
  const long double q = 0.25L * z * z;
  long double power = 1.0L;
  long double harmonic = 0.0L;
  long double sum = 0.0L;
  for (int k = 1; k < kMaxTerms; ++k) {
    power *= -q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    const long double term = -harmonic * power;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum) && k > 2) break;
  }
  return (2.0L / kPiL) * ((std::log(0.5L * z) + kGammaL) * j0 + sum);
}

// Y1 = (2/pi) ln(z/2) J1 - 2/(pi z)
//      - (1/pi) sum_{k>=0} (-1)^k (psi(k+1) + psi(k+2)) (z/2)^(2k+1) / (k!(k+1)!)
long double y1_series(long double z, long double j1) {
  const long double q = -0.25L * z * z;
  long double power = 0.5L * z;
  long double harmonic = 0.0L;  // H_k
  long double sum = (1.0L - 2.0L * kGammaL) * power;
  for (int k = 1; k < kMaxTerms; ++k) {
    power *= q / (static_cast<long double>(k) * (k + 1));
    harmonic += 1.0L / k;
    const long double psi_sum = 2.0L * harmonic + 1.0L / (k + 1) - 2.0L * kGammaL;
    const long double term = psi_sum * power;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum) && k > 2) break;
  }
  return (2.0L / kPiL) * std::log(0.5L * z) * j1 - 2.0L / (kPiL * z) - sum / kPiL;
}

// Hankel expansion: J = sqrt(2/(pi z)) (P cos chi - Q sin chi),
//                   Y = sqrt(2/(pi z)) (P sin chi + Q cos chi).
BesselJY asymptotic_jy(int order, double z) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(term) > std::abs(last) || term == 0.0) break;
    last = term;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = z - (0.5 * order + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * z));
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

double i_series(int order, double x) {
  const double q = 0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum;
}

// K0 = -(ln(x/2)+gamma) I0 + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
// K1 = 1/x + ln(x/2) I1 - (x/4) sum_{k>=0} (psi(k+1)+psi(k+2)) (x^2/4)^k / (k!(k+1)!)
double k_series(int order, double x) {
  const double q = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  if (order == 0) {
    double power = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    for (int k = 1; k < kMaxTerms; ++k) {
      power *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      const double term = harmonic * power;
      sum += term;
      if (term < kEps * std::abs(sum)) break;
    }
    return -(log_half + kEulerGamma) * i_series(0, x) + sum;
  }
  double power = 1.0;
  double harmonic = 0.0;
  double sum = 1.0 - 2.0 * kEulerGamma;
  for (int k = 1; k < kMaxTerms; ++k) {
    power *= q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    const double term = (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma) * power;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return 1.0 / x + log_half * i_series(1, x) - 0.25 * x * sum;
}

// Trapezoid on int_0^inf exp(-x (cosh t - 1)) cosh(v t) dt, times exp(-x).
// The integrand is analytic in |Im t| < pi/2, so the error is ~exp(-pi^2/h).
double k_integral(int order, double x) {
  constexpr double h = 0.125;
  const double t_max = std::acosh(1.0 + 42.0 / x);
  double sum = 0.5;
  for (int k = 1; k * h <= t_max + h; ++k) {
    const double t = k * h;
    const double weight = order == 0 ? 1.0 : std::cosh(t);
    sum += std::exp(-x * (std::cosh(t) - 1.0)) * weight;
  }
  return h * sum * std::exp(-x);
}

}  // namespace

double bessel_j(int order, double z) {
  check_order(order);
  if (!std::isfinite(z)) throw DomainError("bessel_j: argument must be finite");
  const double sign = (order == 1 && z < 0.0) ? -1.0 : 1.0;
  const double a = std::abs(z);
  if (a < kAsymptoticCrossover) return sign * static_cast<double>(j_series(order, a));
  return sign * asymptotic_jy(order, a).j;
}

BesselJY bessel_jy(int order, double z) {
  check_order(order);
  check_positive(z, "bessel_jy");
  if (z >= kAsymptoticCrossover) return asymptotic_jy(order, z);
  const long double j = j_series(order, z);
  const long double y = order == 0 ? y0_series(z, j) : y1_series(z, j);
  return {static_cast<double>(j), static_cast<double>(y)};
}

BesselPair bessel_jy01(double z) {
  check_positive(z, "bessel_jy01");
  if (z >= kAsymptoticCrossover) return {asymptotic_jy(0, z), asymptotic_jy(1, z)};
  const long double j0 = j_series(0, z);
  const long double j1 = j_series(1, z);
  return {{static_cast<double>(j0), static_cast<double>(y0_series(z, j0))},
          {static_cast<double>(j1), static_cast<double>(y1_series(z, j1))}};
}

std::complex<double> hankel1(int order, double z) {
  const BesselJY v = bessel_jy(order, z);
  return {v.j, v.y};
}

double modbessel_k(int order, double x) {
  check_order(order);
  check_positive(x, "modbessel_k");
  if (x <= kModifiedCrossover) return k_series(order, x);
  return k_integral(order, x);
}

double modbessel_i(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw DomainError("modbessel_i: argument must be finite");
  const double sign = (order == 1 && x < 0.0) ? -1.0 : 1.0;
  return sign * i_series(order, std::abs(x));
}

}  // namespace elmono::specfun
