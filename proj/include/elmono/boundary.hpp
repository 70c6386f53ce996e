#pragma once

// Parametric closed curves, their trapezoidal discretization, the Nystrom
// single-layer matrix and Fourier-weighted Sobolev Gram matrices.
//
// Nodal vectors are interleaved: component c of node j sits at index 2j + c.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elmono/elastic_core.hpp"

namespace elmono {

enum class ShapeKind { circle, ellipse, kite, peanut };

// Counterclockwise, 2pi-periodic curve. `a` is the radius (circle), first
// semiaxis (ellipse) or scale (kite, peanut); `b` is the second semiaxis.
struct ParametricBoundary {
  ShapeKind kind;
  Vec2 center;
  double a;
  double b;

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;
  bool contains(const Vec2& x) const;
  std::string name() const;
};

ParametricBoundary make_circle(const Vec2& center, double radius);
ParametricBoundary make_ellipse(const Vec2& center, double a, double b);
ParametricBoundary make_kite(const Vec2& center, double scale);
ParametricBoundary make_peanut(const Vec2& center, double scale);

struct BoundaryDiscretization {
  int n = 0;
  std::vector<double> params;
  std::vector<Vec2> nodes;
  std::vector<Vec2> tangents;  // unit
  std::vector<Vec2> normals;   // outward unit
  std::vector<double> jacobians;
  double weight = 0.0;  // 2 pi / n

  double perimeter() const;
  Vec2 centroid() const;
};

BoundaryDiscretization discretize(const ParametricBoundary& boundary, int n);

struct BoundaryOperatorMatrix {
  Eigen::MatrixXcd matrix;
  Frequency frequency;
};

// Nystrom matrix of (S phi)(x_i) = int G(x_i, y) phi(y) ds(y) with the
// log-singular part integrated by the Kussmaul-Martensen weights.
BoundaryOperatorMatrix assemble_single_layer(const BoundaryDiscretization& disc,
                                             const ElasticMedium& medium, Frequency freq);

// Weights R_k, k = 0..n-1, of int_0^{2pi} ln(4 sin^2((t_i - tau)/2)) f(tau) dtau
// ~ sum_j R_{(i-j) mod n} f(t_j).
std::vector<double> log_quadrature_weights(int n);

// R(d) for an arbitrary parameter offset d = t - t_j.
double log_quadrature_weight(int n, double d);

// 2 x 2n row block applying the same quadrature at an arbitrary parameter t
// with curve point x = gamma(t); t must not coincide with a node.
Eigen::MatrixXcd single_layer_rows(const BoundaryDiscretization& disc, double t, const Vec2& x,
                                   const ElasticMedium& medium, Frequency freq);

struct SobolevGram {
  double s;
  Eigen::MatrixXd matrix;
};

// s in {-1/2, 0, 1/2}. Gram = D^{1/2} C_s D^{1/2} per component, with
// D = diag(weight * jacobian) and C_s the trigonometric-interpolation
// multiplier (1 + m^2)^s on Fourier mode m.
SobolevGram sobolev_gram(const BoundaryDiscretization& disc, double s);

// Quadrature Gram diag(weight * jacobian), repeated per component.
Eigen::VectorXd l2_weights(const BoundaryDiscretization& disc);

}  // namespace elmono
