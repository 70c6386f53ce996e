#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "elmono/elastic_core.hpp"
#include "elmono/errors.hpp"
#include "elmono/reference_bessel.hpp"
#include "elmono/specfun.hpp"

using namespace elmono;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double rel(const CMat2& a, const CMat2& b) { return (a - b).norm() / b.norm(); }

// mu Lap u + (lambda + mu) grad div u + omega^2 u with 5-point Laplacian and
// a 4-point cross stencil for the mixed derivative.
CVec2 navier_residual(const FieldSampler& u, const Vec2& x, const ElasticMedium& m, double h,
                      double* scale) {
  const Vec2 e1(h, 0.0), e2(0.0, h);
  const CVec2 f0 = u(x);
  const CVec2 d11 = (u(x + e1) - 2.0 * f0 + u(x - e1)) / (h * h);
  const CVec2 d22 = (u(x + e2) - 2.0 * f0 + u(x - e2)) / (h * h);
  const CVec2 d12 = (u(x + e1 + e2) - u(x + e1 - e2) - u(x - e1 + e2) + u(x - e1 - e2)) / (4 * h * h);
  const CVec2 lap = d11 + d22;
  const CVec2 gd(d11(0) + d12(1), d12(0) + d22(1));
  *scale = m.mu * lap.norm() + (m.lambda + m.mu) * gd.norm() + m.omega * m.omega * f0.norm();
  return m.mu * lap + (m.lambda + m.mu) * gd + m.omega * m.omega * f0;
}

template <typename F>
cplx second_partial(F f, const Vec2& x, int a, int b, double h) {
  // Fourth-order central differences.
  const double c[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  Vec2 ea = Vec2::Zero(), eb = Vec2::Zero();
  ea(a) = h;
  eb(b) = h;
  if (a == b) {
    const double c2[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    cplx s = 0.0;
    for (int i = 0; i < 5; ++i) s += c2[i] * f(x + (i - 2) * ea);
    return s / (h * h);
  }
  cplx s = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (c[i] == 0.0 || c[j] == 0.0) continue;
      s += c[i] * c[j] * f(x + (i - 2) * ea + (j - 2) * eb);
    }
  }
  return s / (h * h);
}

}  // namespace

TEST_SUITE("elastic_core") {

TEST_CASE("make_medium") {
  const auto m = make_medium(2, 1, 2);
  CHECK(m.kp == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.ks == doctest::Approx(2.0).epsilon(1e-15));
  const auto m2 = make_medium(1, 1, std::sqrt(3.0));
  CHECK(m2.kp == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m2.ks == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(make_medium(-2, 1, 1), ParameterError);
  CHECK_THROWS_AS(make_medium(1, 0, 1), ParameterError);
  CHECK_THROWS_AS(make_medium(1, 1, 0), ParameterError);
  CHECK_THROWS_AS(make_medium(1, 1, -3), ParameterError);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double mu = u(gen);
    const auto mm = make_medium(u(gen) - mu + 1e-3, mu, u(gen));
    CHECK(mm.kp < mm.ks);
  }
}

TEST_CASE("plane waves") {
  const auto m = make_medium(2, 1, 1);
  const auto p = make_plane_wave({1, 0}, 1.0, 0.0);
  const CVec2 at0 = incident_field(p, m, {0, 0});
  CHECK(std::abs(at0(0) - 1.0) < 1e-15);
  CHECK(std::abs(at0(1)) < 1e-15);
  const CVec2 atpi = incident_field(p, make_medium(2, 1, 2), {kPi, 0});
  CHECK(std::abs(atpi(0) + 1.0) < 1e-15);
  CHECK_THROWS_AS(make_plane_wave({1, 1}, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(make_plane_wave({1, 0}, 0.0, 0.0), ParameterError);

  // S waves are divergence-free.
  const auto s = make_plane_wave(Vec2(0.6, 0.8), 0.0, cplx(0.3, -1.1));
  const double h = 1e-5;
  for (const Vec2& x : {Vec2(0.3, -0.2), Vec2(2.0, 1.5)}) {
    const cplx div = (incident_field(s, m, x + Vec2(h, 0))(0) - incident_field(s, m, x - Vec2(h, 0))(0) +
                      incident_field(s, m, x + Vec2(0, h))(1) - incident_field(s, m, x - Vec2(0, h))(1)) /
                     (2 * h);
    CHECK(std::abs(div) <= 1e-8 * m.ks * std::abs(s.as));
  }
}

TEST_CASE("Green's tensor reciprocity on random pairs") {
  const auto m = make_medium(2, 1, 1.3);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Vec2 x(u(gen), u(gen));
    Vec2 y(u(gen), u(gen));
    const double r = (x - y).norm();
    if (r < 0.1 || r > 10) continue;
    CHECK(rel(green_tensor(x, y, m), green_tensor(y, x, m).transpose()) <= 1e-13);
    CHECK(rel(green_tensor_imag(x, y, m), green_tensor_imag(y, x, m).transpose()) <= 1e-13);
  }
  CHECK_THROWS_AS(green_tensor({1, 1}, {1, 1}, m), SingularityError);
  CHECK_THROWS_AS(green_tensor_imag({1, 1}, {1, 1}, m), SingularityError);
}

TEST_CASE("columns of the Green's tensor solve the Navier equation") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (const auto& m : {make_medium(2, 1, 1), make_medium(1, 2, 2.5)}) {
    int tested = 0;
    while (tested < 40) {
      const Vec2 x(u(gen), u(gen)), y(u(gen), u(gen));
      if ((x - y).norm() < 0.5) continue;
      ++tested;
      for (int c = 0; c < 2; ++c) {
        const FieldSampler col = [&](const Vec2& p) -> CVec2 { return green_tensor(p, y, m).col(c); };
        double scale = 0.0;
        const CVec2 res = navier_residual(col, x, m, 1e-3, &scale);
        CHECK(res.norm() <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("kernel split matches a finite-difference Hessian of the defining formula") {
  const auto m = make_medium(2, 1, 1);
  const Vec2 y(0.2, -0.4);
  for (const Vec2& dir : {Vec2(1, 0), Vec2(0.6, 0.8), Vec2(-0.28, 0.96)}) {
    const Vec2 x = y + dir;  // r = 1
    auto psi = [&](const Vec2& p) {
      const double r = (p - y).norm();
      return kI / (4.0 * m.omega * m.omega) * (specfun::hankel1(0, m.ks * r) - specfun::hankel1(0, m.kp * r));
    };
    CMat2 ref;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) ref(a, b) = second_partial(psi, x, a, b, 1e-2);
    }
    ref += kI / (4.0 * m.mu) * specfun::hankel1(0, m.ks) * CMat2::Identity();
    CHECK(rel(green_tensor(x, y, m), ref) <= 1e-6);
  }
}

TEST_CASE("imaginary-frequency kernel is real and matches complex-argument Hankel functions") {
  const auto m = make_medium(2, 1, 1);
  const cplx ks = kI / std::sqrt(m.mu);
  const cplx kp = kI / std::sqrt(m.lambda + 2 * m.mu);
  const cplx w2 = -1.0;
  for (double r : {0.3, 1.0, 2.7}) {
    const cplx h0s = reference::hankel1(0, ks * r), h1s = reference::hankel1(1, ks * r);
    const cplx h0p = reference::hankel1(0, kp * r), h1p = reference::hankel1(1, kp * r);
    const cplx phi1 = kI / (4.0 * m.mu) * h0s - kI / (4.0 * w2 * r) * (ks * h1s - kp * h1p);
    const cplx phi2 = kI / (4.0 * w2) * (2.0 / r * (ks * h1s - kp * h1p) - ks * ks * h0s + kp * kp * h0p);
    const Vec2 d = Vec2(0.6, 0.8) * r;
    const CMat2 ref = phi1 * CMat2::Identity() + phi2 * (d * d.transpose() / (r * r)).cast<cplx>();
    const CMat2 g = green_tensor_imag(d, Vec2::Zero(), m);
    CAPTURE(r);
    CHECK(rel(g, ref) <= 1e-8);
    CHECK(g.imag().cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("imaginary-frequency kernel decays monotonically") {
  const auto m = make_medium(2, 1, 1);
  const Vec2 dir(0.6, 0.8);
  CMat2 prev = green_tensor_imag(dir, Vec2::Zero(), m);
  for (double r = 1.05; r <= 5.0; r += 0.05) {
    const CMat2 g = green_tensor_imag(dir * r, Vec2::Zero(), m);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) CHECK(std::abs(g(a, b)) < std::abs(prev(a, b)));
    }
    prev = g;
  }
}

TEST_CASE("log coefficients and diagonal constants describe the r -> 0 behaviour") {
  for (const auto& m : {make_medium(2, 1, 1), make_medium(0.5, 1.5, 3)}) {
    for (Frequency f : {Frequency::real, Frequency::imaginary_unit}) {
      const KernelSplit c = diagonal_constants(m, f);
      double prev1 = INFINITY, prev2 = INFINITY;
      for (double r : {1e-1, 1e-2, 1e-3}) {
        const KernelSplit k = kernel_split(r, m, f);
        const KernelSplit l = log_coefficients(r, m, f);
        const double e1 = std::abs(k.phi1 - l.phi1 * std::log(r) - c.phi1);
        const double e2 = std::abs(k.phi2 - l.phi2 * std::log(r) - c.phi2);
        // Remainder is O(r^2 log r).
        CHECK(e1 <= 5.0 * r * r * (1.0 - std::log(r)) * (1.0 + m.ks * m.ks) * (1.0 + m.ks * m.ks));
        CHECK(e2 <= 5.0 * r * r * (1.0 - std::log(r)) * (1.0 + m.ks * m.ks) * (1.0 + m.ks * m.ks));
        CHECK(e1 < prev1);
        CHECK(e2 < prev2);
        prev1 = e1;
        prev2 = e2;
      }
      CHECK(std::abs(log_coefficients(0.0, m, f).phi2) < 1e-15);
    }
  }
}

TEST_CASE("log coefficients are (2i/pi) times the J-part of the split") {
  const auto m = make_medium(2, 1, 1.7);
  for (double r : {0.05, 0.7, 3.0}) {
    const double j0s = specfun::bessel_j(0, m.ks * r), j1s = specfun::bessel_j(1, m.ks * r);
    const double j0p = specfun::bessel_j(0, m.kp * r), j1p = specfun::bessel_j(1, m.kp * r);
    const double w2 = m.omega * m.omega;
    const cplx p1 = kI / (4 * m.mu) * j0s - kI / (4 * w2 * r) * (m.ks * j1s - m.kp * j1p);
    const cplx p2 = kI / (4 * w2) * (2 / r * (m.ks * j1s - m.kp * j1p) - m.ks * m.ks * j0s + m.kp * m.kp * j0p);
    const KernelSplit l = log_coefficients(r, m);
    CHECK(std::abs(l.phi1 - 2.0 * kI / kPi * p1) <= 1e-13);
    CHECK(std::abs(l.phi2 - 2.0 * kI / kPi * p2) <= 1e-13);
  }
}

TEST_CASE("far-field prefactors from asymptotic matching") {
  // Along xhat with y = 0: xhat^T G xhat sqrt(R) e^{-i kp R} -> cp and
  // xperp^T G xperp sqrt(R) e^{-i ks R} -> cs. The other wave type leaks in
  // as e^{i (ks - kp) R} / R, which a window average over one beat period
  // removes; the remaining smooth 1/R term is removed by Richardson
  // extrapolation in the window mean of 1/R.
  for (const auto& m : {make_medium(2, 1, 1), make_medium(1, 0.5, 2)}) {
    const Vec2 xh(0.8, -0.6);
    const Vec2 xp = perp(xh);
    const double beat = 2 * kPi / (m.ks - m.kp);
    struct Window {
      cplx p, s;
      double inv_r;
    };
    auto extract = [&](double r0) {
      constexpr int kSamples = 64;
      Window w{0.0, 0.0, 0.0};
      for (int j = 0; j < kSamples; ++j) {
        const double r = r0 + beat * j / kSamples;
        const CMat2 g = green_tensor(r * xh, Vec2::Zero(), m);
        w.p += xh.cast<cplx>().dot(g * xh.cast<cplx>()) * std::sqrt(r) * std::exp(-kI * m.kp * r);
        w.s += xp.cast<cplx>().dot(g * xp.cast<cplx>()) * std::sqrt(r) * std::exp(-kI * m.ks * r);
        w.inv_r += 1.0 / r;
      }
      w.p /= kSamples;
      w.s /= kSamples;
      w.inv_r /= kSamples;
      return w;
    };
    auto richardson = [](const Window& a, const Window& b) {
      const double t = a.inv_r / (a.inv_r - b.inv_r);
      return std::pair{a.p + t * (b.p - a.p), a.s + t * (b.s - a.s)};
    };
    const Window w200 = extract(200), w400 = extract(400), w800 = extract(800);
    const auto lo = richardson(w200, w400), hi = richardson(w400, w800);
    CHECK(std::abs(lo.first - hi.first) <= 1e-4 * std::abs(hi.first));
    CHECK(std::abs(lo.second - hi.second) <= 1e-4 * std::abs(hi.second));
    const auto pre = farfield_prefactors(m);
    CHECK(std::abs(hi.first - pre.p) <= 1e-4 * std::abs(pre.p));
    CHECK(std::abs(hi.second - pre.s) <= 1e-4 * std::abs(pre.s));
  }
}

TEST_CASE("far-field kernel projector structure and phase") {
  const auto m = make_medium(2, 1, 1);
  const Vec2 xh(std::cos(0.4), std::sin(0.4));
  const Vec2 y(0.3, -1.2);
  const auto k = farfield_kernel(xh, y, m);
  const CVec2 v(cplx(0.2, 1.0), cplx(-0.7, 0.1));
  const CVec2 kpv = k.kp * v, ksv = k.ks * v;
  CHECK(std::abs(perp(xh).cast<cplx>().dot(kpv)) <= 1e-13 * kpv.norm());
  CHECK(std::abs(xh.cast<cplx>().dot(ksv)) <= 1e-13 * ksv.norm());
  const auto k0 = farfield_kernel(xh, Vec2::Zero(), m);
  const auto pre = farfield_prefactors(m);
  CHECK(std::abs(k0.kp(0, 0) - pre.p * xh(0) * xh(0)) < 1e-15);
  CHECK(std::abs(k0.ks(1, 1) - pre.s * (1 - xh(1) * xh(1))) < 1e-15);
  CHECK_THROWS_AS(farfield_kernel(Vec2(1.0, 1e-5), y, m), ParameterError);
}

TEST_CASE("Helmholtz decomposition of plane waves") {
  const auto m = make_medium(2, 1, 1.5);
  const Vec2 d(std::cos(1.1), std::sin(1.1));
  const Vec2 x(0.4, -0.9);
  const double h = 1e-4;
  const auto pw = make_plane_wave(d, 1.0, 0.0);
  const auto sw = make_plane_wave(d, 0.0, 1.0);
  const auto mix = make_plane_wave(d, cplx(0.5, 0.2), cplx(-0.3, 0.9));
  for (const auto& [wave, kind] : {std::pair{pw, 0}, std::pair{sw, 1}, std::pair{mix, 2}}) {
    const FieldSampler f = [&, w = wave](const Vec2& p) { return incident_field(w, m, p); };
    const auto parts = helmholtz_components(f, x, m, h);
    const CVec2 u = f(x);
    const CVec2 up_exact = wave.ap * std::exp(kI * m.kp * d.dot(x)) * d.cast<cplx>();
    const CVec2 us_exact = wave.as * std::exp(kI * m.ks * d.dot(x)) * perp(d).cast<cplx>();
    CAPTURE(kind);
    CHECK((parts.up - up_exact).norm() <= 1e-6);
    CHECK((parts.us - us_exact).norm() <= 1e-6);
    CHECK((parts.up + parts.us - u).norm() <= 1e-6);
  }
}

}  // TEST_SUITE
