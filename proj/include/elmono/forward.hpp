#pragma once

// Exterior Dirichlet problem for the rigid obstacle (single-layer ansatz),
// far-field patterns, the discrete far-field operator F, the data-to-pattern
// matrix G and additive noise.
//
// Direction-space vectors are [p_0 .. p_{m-1}, s_0 .. s_{m-1}], where the P
// coefficient is xhat . u_p^inf and the S coefficient xhat_perp . u_s^inf.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elmono/boundary.hpp"
#include "elmono/elastic_core.hpp"

namespace elmono {

struct DirectionSet {
  int m = 0;
  std::vector<Vec2> directions;  // (cos 2pi j/m, sin 2pi j/m)
  double weight = 0.0;           // 2 pi / m
};

DirectionSet make_directions(int m);

// Solvers refuse systems whose 1-norm condition estimate reaches this.
inline constexpr double kConditionLimit = 1e12;

// LU factorization of a real-frequency single-layer matrix, reused across
// right-hand sides.
class DirichletSolver {
 public:
  DirichletSolver(const BoundaryDiscretization& disc, const ElasticMedium& medium);
  DirichletSolver(const BoundaryDiscretization& disc, const BoundaryOperatorMatrix& s);

  Eigen::VectorXcd solve(const Eigen::VectorXcd& f) const;
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& f) const;

  double condition() const { return condition_; }
  const Eigen::MatrixXcd& matrix() const { return s_; }

 private:
  void factorize();

  int n_;
  Eigen::MatrixXcd s_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 0.0;
};

Eigen::VectorXcd solve_exterior_dirichlet(const BoundaryDiscretization& disc,
                                          const BoundaryOperatorMatrix& s,
                                          const Eigen::VectorXcd& f);

// Single-layer potential of a nodal density at an off-boundary point.
CVec2 single_layer_potential(const Eigen::VectorXcd& phi, const BoundaryDiscretization& disc,
                             const ElasticMedium& medium, const Vec2& x);

struct FarFieldPattern {
  std::vector<CVec2> up;
  std::vector<CVec2> us;
};

FarFieldPattern scattered_farfield(const Eigen::VectorXcd& phi, const BoundaryDiscretization& disc,
                                   const DirectionSet& dirs, const ElasticMedium& medium);

// Scalar coefficients (xhat . up, xhat_perp . us) of a pattern.
Eigen::VectorXcd farfield_coefficients(const FarFieldPattern& pattern, const DirectionSet& dirs);

// 2m x 2n matrix taking a nodal density to far-field coefficients.
Eigen::MatrixXcd farfield_quadrature(const BoundaryDiscretization& disc, const DirectionSet& dirs,
                                     const ElasticMedium& medium);

// 2k x 2m matrix taking Herglotz densities to the field values at `points`:
// column j of the P (S) block is e^{-i pi/4} sqrt(kp/omega) d_j e^{i kp d_j.x}
// (resp. sqrt(ks/omega) d_j_perp e^{i ks d_j.x}) times 2 pi / m.
Eigen::MatrixXcd herglotz_values(const std::vector<Vec2>& points, const DirectionSet& dirs,
                                 const ElasticMedium& medium);

struct NoiseRecord {
  double level = 0.0;
  std::uint64_t seed = 0;
};

struct FarFieldOperatorMatrix {
  int m = 0;
  Eigen::MatrixXcd matrix;  // blocks [pp ps; sp ss]
  ElasticMedium medium{};
  bool has_noise = false;
  NoiseRecord noise;
};

struct DataToPatternMatrix {
  Eigen::MatrixXcd matrix;  // 2m x 2n
};

FarFieldOperatorMatrix assemble_farfield_operator(const BoundaryDiscretization& scatterer,
                                                  const ElasticMedium& medium,
                                                  const DirectionSet& dirs);

DataToPatternMatrix assemble_data_to_pattern(const BoundaryDiscretization& scatterer,
                                             const ElasticMedium& medium,
                                             const DirectionSet& dirs);

// F + level ||F||_fro / (2m) E with E_ij = (a + i b)/sqrt(2), a, b standard
// normal from Box-Muller over mt19937_64 (53-bit uniforms), filled row-major.
FarFieldOperatorMatrix add_noise(const FarFieldOperatorMatrix& f, double level, std::uint64_t seed);

// Text format "ffd 1"; see README.
void write_ffd(std::ostream& out, const FarFieldOperatorMatrix& f);
void write_ffd(const std::string& path, const FarFieldOperatorMatrix& f);
FarFieldOperatorMatrix read_ffd(std::istream& in);
FarFieldOperatorMatrix read_ffd(const std::string& path);

}  // namespace elmono
