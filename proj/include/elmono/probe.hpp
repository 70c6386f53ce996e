#pragma once

// Monotonicity probe: weighted direction space, Herglotz matrices on test
// disks, the Hermitian operator Sym(F) + H_B^* H_B in weighted coordinates,
// eigenvalue counting and the localized-wave construction.
//
// Weighted coordinates are c = W^{1/2} g, so <g, h>_W becomes the Euclidean
// inner product and Gram adjoints become conjugate transposes.

#include <vector>

#include <Eigen/Dense>

#include "elmono/boundary.hpp"
#include "elmono/forward.hpp"

namespace elmono {

struct WeightedDirectionSpace {
  DirectionSet dirs;
  ElasticMedium medium{};
  Eigen::VectorXd w;  // (omega/kp) 2pi/m on the P block, (omega/ks) 2pi/m on the S block
};

WeightedDirectionSpace make_weighted_space(const DirectionSet& dirs, const ElasticMedium& medium);

// conj(g)^T W h
cplx weighted_inner(const Eigen::VectorXcd& g, const Eigen::VectorXcd& h,
                    const WeightedDirectionSpace& space);

// ||W^{1/2} A W^{-1/2}||_2 for a direction-space operator.
double weighted_norm(const Eigen::MatrixXcd& a, const WeightedDirectionSpace& space);

struct TestDisk {
  Vec2 center;
  double radius;
  int nB;
  BoundaryDiscretization disc;
};

TestDisk make_test_disk(const Vec2& center, double radius, int nB);

// 2 nB x 2m: densities to nodal Herglotz values on the disk boundary.
Eigen::MatrixXcd herglotz_matrix(const TestDisk& disk, const WeightedDirectionSpace& space,
                                 const ElasticMedium& medium);

// Square root and inverse square root of a symmetric positive definite matrix
// by eigendecomposition.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a);
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a);

// Sym(W^{1/2} F W^{-1/2}).
Eigen::MatrixXcd weighted_real_part(const FarFieldOperatorMatrix& f,
                                    const WeightedDirectionSpace& space);

// Gamma^{1/2} H W^{-1/2}; its Gram square is the Herglotz part of the probe.
Eigen::MatrixXcd herglotz_factor(const Eigen::MatrixXcd& herglotz, const Eigen::MatrixXd& gram_sqrt,
                                 const WeightedDirectionSpace& space);

struct ProbeOperator {
  Eigen::MatrixXcd matrix;
  TestDisk disk;
};

ProbeOperator probe_operator(const FarFieldOperatorMatrix& f, const TestDisk& disk,
                             const WeightedDirectionSpace& space, const SobolevGram& gram);

// Same operator from a precomputed weighted real part and Gram root.
Eigen::MatrixXcd probe_matrix(const Eigen::MatrixXcd& real_part, const TestDisk& disk,
                              const WeightedDirectionSpace& space, const Eigen::MatrixXd& gram_sqrt);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXcd vectors;
};

// Householder tridiagonalization + implicit QR (Eigen). Rejects matrices with
// ||M - M^H||_F > 1e-12 ||M||_F.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m);
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& m);

struct EigenCount {
  std::vector<double> eigenvalues;
  double delta;
  int count_above;
};

EigenCount count_above(const std::vector<double>& eigenvalues, double delta);

struct LocalizedWave {
  double sigma;
  double eigenvalue;              // top eigenvalue of the pencil
  Eigen::VectorXcd unit_vector;   // unit C-norm pencil eigenvector, unweighted coordinates
  Eigen::VectorXcd density;       // unit_vector * eigenvalue^{-1/4}
  double herglotz_norm;           // ||H_B density||_{H^{1/2}(dB)}
  double pattern_norm;            // ||G^* density||_{H^{-1/2}(dD)}
};

// For each sigma: top eigenpair of A^H A v = lambda (Gt^H Gt + sigma ||Gt^H Gt||_2 I) v
// with A = Gamma_B^{1/2} H_B W^{-1/2} and Gt = Gamma_{-1/2}^{1/2} Gamma_0^{-1} G^H W^{1/2}.
// Gamma_0 is the quadrature Gram of dD.
std::vector<LocalizedWave> localized_density(const Eigen::MatrixXcd& herglotz_b,
                                             const SobolevGram& gram_b,
                                             const DataToPatternMatrix& g,
                                             const SobolevGram& gram_d_minus_half,
                                             const Eigen::VectorXd& l2_weights_d,
                                             const WeightedDirectionSpace& space,
                                             const std::vector<double>& sigmas);

}  // namespace elmono
