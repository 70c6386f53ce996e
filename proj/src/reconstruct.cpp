#include "elmono/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elmono/errors.hpp"

namespace elmono {

FarFieldOperatorMatrix synthesize_farfield(const RunConfig& config) {
  validate_config(config);
  const ElasticMedium medium = config.medium();
  const BoundaryDiscretization disc = discretize(config.scatterer, config.n_boundary);
  const FarFieldOperatorMatrix f =
      assemble_farfield_operator(disc, medium, make_directions(config.m_directions));
  return add_noise(f, config.noise_level, config.seed);
}

double farfield_scale(const FarFieldOperatorMatrix& f, const WeightedDirectionSpace& space) {
  return weighted_norm(f.matrix, space);
}

int probe_count(const Eigen::MatrixXcd& real_part, const TestDisk& disk,
                const WeightedDirectionSpace& space, const Eigen::MatrixXd& gram_sqrt, double delta) {
  const Eigen::MatrixXcd m = probe_matrix(real_part, disk, space, gram_sqrt);
  return count_above(hermitian_eigenvalues(m), delta).count_above;
}

Calibration calibrate(const FarFieldOperatorMatrix& f, const WeightedDirectionSpace& space,
                      const TestDisk& reference_disk, double noise_level) {
  if (!f.matrix.allFinite()) throw DataError("far-field operator has non-finite entries");
  const double scale = farfield_scale(f, space);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DataError("far-field operator is zero");
  const double delta = std::max(noise_level, 1e-8) * scale;
  const Eigen::MatrixXd root = spd_sqrt(sobolev_gram(reference_disk.disc, 0.5).matrix);
  const int count = probe_count(weighted_real_part(f, space), reference_disk, space, root, delta);
  return {delta, count + 2, "auto"};
}

IndicatorGrid sweep(const RunConfig& config, const FarFieldOperatorMatrix& f) {
  validate_config(config);
  const WeightedDirectionSpace space = make_weighted_space(make_directions(f.m), f.medium);
  const GridSpec& g = config.grid;
  const double noise = f.has_noise ? f.noise.level : config.noise_level;

  Calibration cal{};
  if (config.delta && config.r_max) {
    cal = {*config.delta, *config.r_max, "explicit"};
  } else {
    const Vec2 centroid(0.5 * (g.xmin + g.xmax), 0.5 * (g.ymin + g.ymax));
    const TestDisk reference = make_test_disk(centroid, config.test_radius, config.nB);
    if (config.delta) {
      const Eigen::MatrixXd root = spd_sqrt(sobolev_gram(reference.disc, 0.5).matrix);
      const int count = probe_count(weighted_real_part(f, space), reference, space, root, *config.delta);
      cal = {*config.delta, count + 2, "mixed"};
    } else {
      cal = calibrate(f, space, reference, noise);
      if (config.r_max) {
        cal.r_max = *config.r_max;
        cal.how = "mixed";
      }
    }
  }

  const Eigen::MatrixXcd real_part = weighted_real_part(f, space);
  // Every test disk has the same radius, so one Gram root serves all cells.
  const TestDisk shape = make_test_disk(Vec2::Zero(), config.test_radius, config.nB);
  const Eigen::MatrixXd root = spd_sqrt(sobolev_gram(shape.disc, 0.5).matrix);

  IndicatorGrid out{g, std::vector<int>(static_cast<std::size_t>(g.nx) * g.ny, -1), cal};
  const int cells = g.nx * g.ny;
#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 0; k < cells; ++k) {
    const int ix = k % g.nx;
    const int iy = k / g.nx;
    try {
      const TestDisk disk = make_test_disk(g.point(ix, iy), config.test_radius, config.nB);
      out.counts[k] = probe_count(real_part, disk, space, root, cal.delta);
    } catch (const std::exception&) {
      out.counts[k] = -1;
    }
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Writer>
void write_file(const std::string& path, const IndicatorGrid& grid, Writer writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  writer(out, grid);
  out.flush();
  if (!out) throw DataError("write to '" + path + "' failed");
}

}  // namespace

void write_indicator_csv(std::ostream& out, const IndicatorGrid& grid) {
  out << "x,y,count,inside\n";
  for (int iy = 0; iy < grid.grid.ny; ++iy) {
    for (int ix = 0; ix < grid.grid.nx; ++ix) {
      const Vec2 p = grid.grid.point(ix, iy);
      out << fmt(p.x()) << ',' << fmt(p.y()) << ',' << grid.counts[iy * grid.grid.nx + ix] << ','
          << (grid.inside(ix, iy) ? 1 : 0) << '\n';
    }
  }
}

void write_indicator_csv(const IndicatorGrid& grid, const std::string& path) {
  write_file(path, grid, [](std::ostream& o, const IndicatorGrid& g) { write_indicator_csv(o, g); });
}

void write_indicator_pgm(std::ostream& out, const IndicatorGrid& grid) {
  out << "P2\n" << grid.grid.nx << ' ' << grid.grid.ny << "\n255\n";
  for (int iy = grid.grid.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.grid.nx; ++ix) {
      if (ix > 0) out << ' ';
      out << (grid.failed(ix, iy) ? 128 : grid.inside(ix, iy) ? 255 : 0);
    }
    out << '\n';
  }
}

void write_indicator_pgm(const IndicatorGrid& grid, const std::string& path) {
  write_file(path, grid, [](std::ostream& o, const IndicatorGrid& g) { write_indicator_pgm(o, g); });
}

std::vector<IndicatorRow> read_indicator_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,count,inside") throw DataError("indicator CSV: bad header");
  std::vector<IndicatorRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    IndicatorRow r{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ls >> r.x >> c1 >> r.y >> c2 >> r.count >> c3 >> r.inside) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw DataError("indicator CSV: malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace elmono
