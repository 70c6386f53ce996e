#include "elmono/boundary.hpp"

#include <cmath>
#include <numbers>

#include "elmono/errors.hpp"

namespace elmono {
namespace {

constexpr double kPi = std::numbers::pi;

// Peanut radius in polar form and its derivative.
double peanut_radius(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return std::sqrt(c * c + 0.25 * s * s);
}

double peanut_radius_derivative(double t) {
  return -0.75 * std::sin(t) * std::cos(t) / peanut_radius(t);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(what) + " must be positive and finite");
  }
}

bool polygon_contains(const ParametricBoundary& b, const Vec2& x) {
  constexpr int kSides = 4096;
  bool inside = false;
  Vec2 prev = b.point(2.0 * kPi * (kSides - 1) / kSides);
  for (int k = 0; k < kSides; ++k) {
    const Vec2 cur = b.point(2.0 * kPi * k / kSides);
    if ((cur.y() > x.y()) != (prev.y() > x.y())) {
      const double xc = prev.x() + (x.y() - prev.y()) * (cur.x() - prev.x()) / (cur.y() - prev.y());
      if (x.x() < xc) inside = !inside;
    }
    prev = cur;
  }
  return inside;
}

}  // namespace

Vec2 ParametricBoundary::point(double t) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  switch (kind) {
    case ShapeKind::circle: return center + a * Vec2(c, s);
    case ShapeKind::ellipse: return center + Vec2(a * c, b * s);
    case ShapeKind::kite:
      return center + a * Vec2(c + 0.65 * std::cos(2.0 * t) - 0.65, 1.5 * s);
    case ShapeKind::peanut: return center + a * peanut_radius(t) * Vec2(c, s);
  }
  return center;
}

Vec2 ParametricBoundary::derivative(double t) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  switch (kind) {
    case ShapeKind::circle: return a * Vec2(-s, c);
    case ShapeKind::ellipse: return Vec2(-a * s, b * c);
    case ShapeKind::kite: return a * Vec2(-s - 1.3 * std::sin(2.0 * t), 1.5 * c);
    case ShapeKind::peanut: {
      const double r = peanut_radius(t);
      const double dr = peanut_radius_derivative(t);
      return a * Vec2(dr * c - r * s, dr * s + r * c);
    }
  }
  return Vec2::Zero();
}

bool ParametricBoundary::contains(const Vec2& x) const {
  const Vec2 d = x - center;
  switch (kind) {
    case ShapeKind::circle: return d.norm() < a;
    case ShapeKind::ellipse: return (d.x() / a) * (d.x() / a) + (d.y() / b) * (d.y() / b) < 1.0;
    case ShapeKind::peanut: {
      if (d.norm() == 0.0) return true;
      return d.norm() < a * peanut_radius(std::atan2(d.y(), d.x()));
    }
    case ShapeKind::kite: return polygon_contains(*this, x);
  }
  return false;
}

std::string ParametricBoundary::name() const {
  switch (kind) {
    case ShapeKind::circle: return "circle";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::kite: return "kite";
    case ShapeKind::peanut: return "peanut";
  }
  return "unknown";
}

ParametricBoundary make_circle(const Vec2& center, double radius) {
  require_positive(radius, "circle radius");
  return {ShapeKind::circle, center, radius, radius};
}

ParametricBoundary make_ellipse(const Vec2& center, double a, double b) {
  require_positive(a, "ellipse semiaxis a");
  require_positive(b, "ellipse semiaxis b");
  return {ShapeKind::ellipse, center, a, b};
}

ParametricBoundary make_kite(const Vec2& center, double scale) {
  require_positive(scale, "kite scale");
  return {ShapeKind::kite, center, scale, scale};
}

ParametricBoundary make_peanut(const Vec2& center, double scale) {
  require_positive(scale, "peanut scale");
  return {ShapeKind::peanut, center, scale, scale};
}

double BoundaryDiscretization::perimeter() const {
  double sum = 0.0;
  for (double j : jacobians) sum += weight * j;
  return sum;
}

Vec2 BoundaryDiscretization::centroid() const {
  Vec2 c = Vec2::Zero();
  for (const auto& x : nodes) c += x;
  return c / static_cast<double>(n);
}

BoundaryDiscretization discretize(const ParametricBoundary& boundary, int n) {
  if (n < 8 || n % 2 != 0) throw ParameterError("boundary node count must be even and >= 8");
  BoundaryDiscretization d;
  d.n = n;
  d.weight = 2.0 * kPi / n;
  d.params.resize(n);
  d.nodes.resize(n);
  d.tangents.resize(n);
  d.normals.resize(n);
  d.jacobians.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const Vec2 dx = boundary.derivative(t);
    const double jac = dx.norm();
    if (!(jac > 0.0)) throw DomainError("parametrization has vanishing speed");
    d.params[j] = t;
    d.nodes[j] = boundary.point(t);
    d.jacobians[j] = jac;
    d.tangents[j] = dx / jac;
    d.normals[j] = Vec2(d.tangents[j].y(), -d.tangents[j].x());
  }
  return d;
}

double log_quadrature_weight(int n, double d) {
  const int half = n / 2;
  double sum = 0.0;
  for (int m = 1; m < half; ++m) sum += std::cos(m * d) / m;
  return -(2.0 * kPi / half) * sum - (kPi / (static_cast<double>(half) * half)) * std::cos(half * d);
}

std::vector<double> log_quadrature_weights(int n) {
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) r[k] = log_quadrature_weight(n, 2.0 * kPi * k / n);
  return r;
}

namespace {

// Off-diagonal log/smooth split of the kernel times the source Jacobian.
void split_entry(const Vec2& x, double t, const BoundaryDiscretization& disc, int j,
                 const ElasticMedium& medium, Frequency freq, CMat2& m1, CMat2& m2) {
  const double jac = disc.jacobians[j];
  const Vec2 d = x - disc.nodes[j];
  const double r = d.norm();
  const Eigen::Matrix2d rr = (d * d.transpose()) / (r * r);
  const KernelSplit k = kernel_split(r, medium, freq);
  const KernelSplit l = log_coefficients(r, medium, freq);
  const CMat2 full = (k.phi1 * CMat2::Identity() + k.phi2 * rr.cast<cplx>()) * jac;
  m1 = 0.5 * (l.phi1 * CMat2::Identity() + l.phi2 * rr.cast<cplx>()) * jac;
  const double sn = std::sin(0.5 * (t - disc.params[j]));
  m2 = full - m1 * std::log(4.0 * sn * sn);
}

}  // namespace

Eigen::MatrixXcd single_layer_rows(const BoundaryDiscretization& disc, double t, const Vec2& x,
                                   const ElasticMedium& medium, Frequency freq) {
  const double trap = kPi / (disc.n / 2);
  Eigen::MatrixXcd rows(2, 2 * disc.n);
  for (int j = 0; j < disc.n; ++j) {
    CMat2 m1, m2;
    split_entry(x, t, disc, j, medium, freq, m1, m2);
    rows.block<2, 2>(0, 2 * j) = log_quadrature_weight(disc.n, t - disc.params[j]) * m1 + trap * m2;
  }
  return rows;
}

BoundaryOperatorMatrix assemble_single_layer(const BoundaryDiscretization& disc,
                                             const ElasticMedium& medium, Frequency freq) {
  const int n = disc.n;
  if (n < 8 || n % 2 != 0) throw ParameterError("invalid discretization");
  const std::vector<double> rw = log_quadrature_weights(n);
  const double trap = kPi / (n / 2);
  const KernelSplit l0 = log_coefficients(0.0, medium, freq);
  const KernelSplit c0 = diagonal_constants(medium, freq);

  Eigen::MatrixXcd s(2 * n, 2 * n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double jac = disc.jacobians[j];
      const double r_log = rw[(i - j + n) % n];
      CMat2 m1;
      CMat2 m2;
      if (i == j) {
        const Vec2& tan = disc.tangents[j];
        const Eigen::Matrix2d ttt = tan * tan.transpose();
        m1 = 0.5 * l0.phi1 * jac * CMat2::Identity();
        m2 = (c0.phi1 + l0.phi1 * std::log(jac)) * jac * CMat2::Identity() +
             c0.phi2 * jac * ttt.cast<cplx>();
      } else {
        split_entry(disc.nodes[i], disc.params[i], disc, j, medium, freq, m1, m2);
      }
      s.block<2, 2>(2 * i, 2 * j) = r_log * m1 + trap * m2;
    }
  }
  return {std::move(s), freq};
}

Eigen::VectorXd l2_weights(const BoundaryDiscretization& disc) {
  Eigen::VectorXd w(2 * disc.n);
  for (int j = 0; j < disc.n; ++j) {
    w(2 * j) = w(2 * j + 1) = disc.weight * disc.jacobians[j];
  }
  return w;
}

SobolevGram sobolev_gram(const BoundaryDiscretization& disc, double s) {
  if (s != -0.5 && s != 0.0 && s != 0.5) throw ParameterError("Sobolev exponent must be -1/2, 0 or 1/2");
  const int n = disc.n;
  const int half = n / 2;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  if (s == 0.0) {
    g.diagonal() = l2_weights(disc);
    return {s, std::move(g)};
  }
  // C_s depends only on (j - k) mod n.
  std::vector<double> row(n);
  for (int k = 0; k <= half; ++k) {
    const double d = 2.0 * kPi * k / n;
    double sum = 1.0;
    for (int m = 1; m < half; ++m) sum += 2.0 * std::pow(1.0 + m * m, s) * std::cos(m * d);
    sum += std::pow(1.0 + static_cast<double>(half) * half, s) * std::cos(half * d);
    row[k] = sum / n;
    row[(n - k) % n] = row[k];
  }
  std::vector<double> root(n);
  for (int j = 0; j < n; ++j) root[j] = std::sqrt(disc.weight * disc.jacobians[j]);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double v = root[j] * row[(j - k + n) % n] * root[k];
      g(2 * j, 2 * k) = v;
      g(2 * j + 1, 2 * k + 1) = v;
    }
  }
  return {s, std::move(g)};
}

}  // namespace elmono
