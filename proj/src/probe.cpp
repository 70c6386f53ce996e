#include "elmono/probe.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "elmono/errors.hpp"

namespace elmono {
namespace {

void check_direction_dim(Eigen::Index n, const WeightedDirectionSpace& space) {
  if (n != space.w.size()) throw ParameterError("direction-space dimension mismatch");
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spd_eigen(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ParameterError("Gram matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
  if (!(es.eigenvalues().minCoeff() > 0.0)) throw ParameterError("Gram matrix is not positive definite");
  return es;
}

}  // namespace

WeightedDirectionSpace make_weighted_space(const DirectionSet& dirs, const ElasticMedium& medium) {
  WeightedDirectionSpace s{dirs, medium, Eigen::VectorXd(2 * dirs.m)};
  s.w.head(dirs.m).setConstant(medium.omega / medium.kp * dirs.weight);
  s.w.tail(dirs.m).setConstant(medium.omega / medium.ks * dirs.weight);
  return s;
}

cplx weighted_inner(const Eigen::VectorXcd& g, const Eigen::VectorXcd& h,
                    const WeightedDirectionSpace& space) {
  check_direction_dim(g.size(), space);
  check_direction_dim(h.size(), space);
  return g.dot(space.w.cast<cplx>().cwiseProduct(h));
}

double weighted_norm(const Eigen::MatrixXcd& a, const WeightedDirectionSpace& space) {
  check_direction_dim(a.rows(), space);
  check_direction_dim(a.cols(), space);
  const Eigen::VectorXd r = space.w.cwiseSqrt();
  const Eigen::MatrixXcd aw = r.asDiagonal() * a * r.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(aw);
  return svd.singularValues()(0);
}

TestDisk make_test_disk(const Vec2& center, double radius, int nB) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("test disk radius must be positive");
  if (nB < 16 || nB % 2 != 0) throw ParameterError("test disk node count must be even and >= 16");
  return {center, radius, nB, discretize(make_circle(center, radius), nB)};
}

Eigen::MatrixXcd herglotz_matrix(const TestDisk& disk, const WeightedDirectionSpace& space,
                                 const ElasticMedium& medium) {
  return herglotz_values(disk.disc.nodes, space.dirs, medium);
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a) {
  const auto es = spd_eigen(a);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a) {
  const auto es = spd_eigen(a);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

Eigen::MatrixXcd weighted_real_part(const FarFieldOperatorMatrix& f,
                                    const WeightedDirectionSpace& space) {
  check_direction_dim(f.matrix.rows(), space);
  check_direction_dim(f.matrix.cols(), space);
  const Eigen::VectorXd r = space.w.cwiseSqrt();
  const Eigen::MatrixXcd fw = r.asDiagonal() * f.matrix * r.cwiseInverse().asDiagonal();
  return 0.5 * (fw + fw.adjoint());
}

Eigen::MatrixXcd herglotz_factor(const Eigen::MatrixXcd& herglotz, const Eigen::MatrixXd& gram_sqrt,
                                 const WeightedDirectionSpace& space) {
  check_direction_dim(herglotz.cols(), space);
  if (gram_sqrt.rows() != herglotz.rows()) throw ParameterError("Gram and Herglotz sizes differ");
  return gram_sqrt.cast<cplx>() * herglotz * space.w.cwiseSqrt().cwiseInverse().asDiagonal();
}

Eigen::MatrixXcd probe_matrix(const Eigen::MatrixXcd& real_part, const TestDisk& disk,
                              const WeightedDirectionSpace& space, const Eigen::MatrixXd& gram_sqrt) {
  check_direction_dim(real_part.rows(), space);
  const Eigen::MatrixXcd a = herglotz_factor(herglotz_matrix(disk, space, space.medium), gram_sqrt, space);
  Eigen::MatrixXcd m = real_part + a.adjoint() * a;
  return 0.5 * (m + m.adjoint());
}

ProbeOperator probe_operator(const FarFieldOperatorMatrix& f, const TestDisk& disk,
                             const WeightedDirectionSpace& space, const SobolevGram& gram) {
  if (f.m != space.dirs.m) throw ParameterError("far-field operator and direction space differ in m");
  if (gram.matrix.rows() != 2 * disk.nB) throw ParameterError("Gram does not match the test disk");
  return {probe_matrix(weighted_real_part(f, space), disk, space, spd_sqrt(gram.matrix)), disk};
}

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ParameterError("matrix must be square");
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > 1e-12 * scale) throw ParameterError("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ParameterError("matrix must be square");
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > 1e-12 * scale) throw ParameterError("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const Eigen::VectorXd& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

EigenCount count_above(const std::vector<double>& eigenvalues, double delta) {
  if (!(delta > 0.0)) throw ParameterError("threshold delta must be positive");
  const auto n = std::count_if(eigenvalues.begin(), eigenvalues.end(), [delta](double v) { return v > delta; });
  return {eigenvalues, delta, static_cast<int>(n)};
}

std::vector<LocalizedWave> localized_density(const Eigen::MatrixXcd& herglotz_b,
                                             const SobolevGram& gram_b,
                                             const DataToPatternMatrix& g,
                                             const SobolevGram& gram_d_minus_half,
                                             const Eigen::VectorXd& l2_weights_d,
                                             const WeightedDirectionSpace& space,
                                             const std::vector<double>& sigmas) {
  const Eigen::Index dim = space.w.size();
  check_direction_dim(herglotz_b.cols(), space);
  check_direction_dim(g.matrix.rows(), space);
  if (gram_d_minus_half.matrix.rows() != g.matrix.cols() || l2_weights_d.size() != g.matrix.cols()) {
    throw ParameterError("scatterer Gram does not match G");
  }
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    if (!(sigmas[k] > 0.0) || (k > 0 && !(sigmas[k] < sigmas[k - 1]))) {
      throw ParameterError("sigmas must be positive and strictly decreasing");
    }
  }

  const Eigen::VectorXd wr = space.w.cwiseSqrt();
  const Eigen::MatrixXcd a = herglotz_factor(herglotz_b, spd_sqrt(gram_b.matrix), space);
  const Eigen::MatrixXcd gt = spd_sqrt(gram_d_minus_half.matrix).cast<cplx>() *
                              l2_weights_d.cwiseInverse().asDiagonal() * g.matrix.adjoint() *
                              wr.asDiagonal();
  const Eigen::MatrixXcd aa = a.adjoint() * a;
  const Eigen::MatrixXcd gg = gt.adjoint() * gt;
  const double scale = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gg, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .cwiseAbs()
                           .maxCoeff();

  std::vector<LocalizedWave> out;
  for (double sigma : sigmas) {
    const Eigen::MatrixXcd c = gg + sigma * scale * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(aa, c);
    if (es.info() != Eigen::Success) throw NumericalError("localized-wave pencil breakdown");
    const double lambda = es.eigenvalues()(dim - 1);
    if (!(lambda > 0.0)) throw NumericalError("localized-wave pencil has no positive eigenvalue");
    const Eigen::VectorXcd v = es.eigenvectors().col(dim - 1);
    const Eigen::VectorXcd unit = wr.cwiseInverse().asDiagonal() * v;
    const Eigen::VectorXcd scaled = v * std::pow(lambda, -0.25);
    out.push_back({sigma, lambda, unit, wr.cwiseInverse().asDiagonal() * scaled, (a * scaled).norm(),
                   (gt * scaled).norm()});
  }
  return out;
}

}  // namespace elmono
