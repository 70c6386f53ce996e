#include "elmono/forward.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "elmono/errors.hpp"

namespace elmono {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

}  // namespace

DirectionSet make_directions(int m) {
  if (m < 2 || m % 2 != 0) throw ParameterError("direction count must be even and >= 2");
  DirectionSet d;
  d.m = m;
  d.weight = 2.0 * kPi / m;
  d.directions.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double th = 2.0 * kPi * j / m;
    d.directions.emplace_back(std::cos(th), std::sin(th));
  }
  return d;
}

DirichletSolver::DirichletSolver(const BoundaryDiscretization& disc, const ElasticMedium& medium)
    : n_(disc.n), s_(assemble_single_layer(disc, medium, Frequency::real).matrix) {
  factorize();
}

DirichletSolver::DirichletSolver(const BoundaryDiscretization& disc, const BoundaryOperatorMatrix& s)
    : n_(disc.n), s_(s.matrix) {
  if (s.frequency != Frequency::real) {
    throw ParameterError("the exterior problem needs the real-frequency single layer");
  }
  if (s_.rows() != 2 * n_ || s_.cols() != 2 * n_) {
    throw ParameterError("single-layer matrix does not match the discretization");
  }
  factorize();
}

void DirichletSolver::factorize() {
  lu_.compute(s_);
  const double rc = lu_.rcond();
  condition_ = rc > 0.0 ? 1.0 / rc : INFINITY;
  if (!std::isfinite(condition_) || condition_ >= kConditionLimit) {
    throw InteriorEigenvalueError(
        "single-layer system is numerically singular; omega^2 is near an interior Dirichlet "
        "eigenvalue of the obstacle",
        condition_);
  }
}

Eigen::VectorXcd DirichletSolver::solve(const Eigen::VectorXcd& f) const {
  if (f.size() != 2 * n_) throw ParameterError("boundary data has the wrong length");
  return lu_.solve(f);
}

Eigen::MatrixXcd DirichletSolver::solve(const Eigen::MatrixXcd& f) const {
  if (f.rows() != 2 * n_) throw ParameterError("boundary data has the wrong length");
  return lu_.solve(f);
}

Eigen::VectorXcd solve_exterior_dirichlet(const BoundaryDiscretization& disc,
                                          const BoundaryOperatorMatrix& s,
                                          const Eigen::VectorXcd& f) {
  return DirichletSolver(disc, s).solve(f);
}

CVec2 single_layer_potential(const Eigen::VectorXcd& phi, const BoundaryDiscretization& disc,
                             const ElasticMedium& medium, const Vec2& x) {
  if (phi.size() != 2 * disc.n) throw ParameterError("density has the wrong length");
  CVec2 u = CVec2::Zero();
  for (int j = 0; j < disc.n; ++j) {
    u += green_tensor(x, disc.nodes[j], medium) * phi.segment<2>(2 * j) *
         (disc.weight * disc.jacobians[j]);
  }
  return u;
}

FarFieldPattern scattered_farfield(const Eigen::VectorXcd& phi, const BoundaryDiscretization& disc,
                                   const DirectionSet& dirs, const ElasticMedium& medium) {
  if (phi.size() != 2 * disc.n) throw ParameterError("density has the wrong length");
  FarFieldPattern out;
  out.up.assign(dirs.m, CVec2::Zero());
  out.us.assign(dirs.m, CVec2::Zero());
  for (int i = 0; i < dirs.m; ++i) {
    for (int j = 0; j < disc.n; ++j) {
      const FarFieldKernel k = farfield_kernel(dirs.directions[i], disc.nodes[j], medium);
      const CVec2 q = phi.segment<2>(2 * j) * (disc.weight * disc.jacobians[j]);
      out.up[i] += k.kp * q;
      out.us[i] += k.ks * q;
    }
  }
  return out;
}

Eigen::VectorXcd farfield_coefficients(const FarFieldPattern& pattern, const DirectionSet& dirs) {
  Eigen::VectorXcd c(2 * dirs.m);
  for (int i = 0; i < dirs.m; ++i) {
    const Vec2& xh = dirs.directions[i];
    c(i) = xh.cast<cplx>().dot(pattern.up[i]);
    c(dirs.m + i) = perp(xh).cast<cplx>().dot(pattern.us[i]);
  }
  return c;
}

Eigen::MatrixXcd farfield_quadrature(const BoundaryDiscretization& disc, const DirectionSet& dirs,
                                     const ElasticMedium& medium) {
  const int m = dirs.m;
  Eigen::MatrixXcd q(2 * m, 2 * disc.n);
  for (int i = 0; i < m; ++i) {
    const Vec2& xh = dirs.directions[i];
    const Vec2 xp = perp(xh);
    for (int j = 0; j < disc.n; ++j) {
      const FarFieldKernel k = farfield_kernel(xh, disc.nodes[j], medium);
      const double w = disc.weight * disc.jacobians[j];
      q.block<1, 2>(i, 2 * j) = xh.transpose().cast<cplx>() * k.kp * w;
      q.block<1, 2>(m + i, 2 * j) = xp.transpose().cast<cplx>() * k.ks * w;
    }
  }
  return q;
}

Eigen::MatrixXcd herglotz_values(const std::vector<Vec2>& points, const DirectionSet& dirs,
                                 const ElasticMedium& medium) {
  const int m = dirs.m;
  const int k = static_cast<int>(points.size());
  const cplx phase = std::exp(-kI * (kPi / 4.0));
  const cplx ap = phase * std::sqrt(medium.kp / medium.omega) * dirs.weight;
  const cplx as = phase * std::sqrt(medium.ks / medium.omega) * dirs.weight;
  Eigen::MatrixXcd h(2 * k, 2 * m);
  for (int j = 0; j < m; ++j) {
    const Vec2& d = dirs.directions[j];
    const Vec2 dp = perp(d);
    for (int i = 0; i < k; ++i) {
      const double t = d.dot(points[i]);
      const cplx ep = ap * std::exp(kI * medium.kp * t);
      const cplx es = as * std::exp(kI * medium.ks * t);
      h(2 * i, j) = ep * d.x();
      h(2 * i + 1, j) = ep * d.y();
      h(2 * i, m + j) = es * dp.x();
      h(2 * i + 1, m + j) = es * dp.y();
    }
  }
  return h;
}

FarFieldOperatorMatrix assemble_farfield_operator(const BoundaryDiscretization& scatterer,
                                                  const ElasticMedium& medium,
                                                  const DirectionSet& dirs) {
  const DirichletSolver solver(scatterer, medium);
  const Eigen::MatrixXcd incident = herglotz_values(scatterer.nodes, dirs, medium);
  FarFieldOperatorMatrix f;
  f.m = dirs.m;
  f.medium = medium;
  f.matrix = -farfield_quadrature(scatterer, dirs, medium) * solver.solve(incident);
  return f;
}

DataToPatternMatrix assemble_data_to_pattern(const BoundaryDiscretization& scatterer,
                                             const ElasticMedium& medium,
                                             const DirectionSet& dirs) {
  const DirichletSolver solver(scatterer, medium);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * scatterer.n, 2 * scatterer.n);
  return {farfield_quadrature(scatterer, dirs, medium) * solver.solve(id)};
}

FarFieldOperatorMatrix add_noise(const FarFieldOperatorMatrix& f, double level, std::uint64_t seed) {
  if (!(level >= 0.0) || !(level < 1.0)) throw ParameterError("noise level must lie in [0, 1)");
  FarFieldOperatorMatrix out = f;
  out.has_noise = true;
  out.noise = {level, seed};
  if (level == 0.0) return out;

  const auto rows = f.matrix.rows();
  const auto cols = f.matrix.cols();
  const double scale = level * f.matrix.norm() / std::sqrt(static_cast<double>(rows * cols));
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double u1 = 1.0 - uniform();
      const double u2 = uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const cplx e(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
      out.matrix(i, j) += scale * e / std::sqrt(2.0);
    }
  }
  return out;
}

}  // namespace elmono
