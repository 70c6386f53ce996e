#pragma once

// Run configuration, threshold calibration, the test-disk sweep and the
// CSV/PGM indicator writers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elmono/boundary.hpp"
#include "elmono/forward.hpp"
#include "elmono/probe.hpp"

namespace elmono {

struct GridSpec {
  double xmin = -2.0;
  double xmax = 2.0;
  double ymin = -2.0;
  double ymax = 2.0;
  int nx = 41;
  int ny = 41;

  Vec2 point(int ix, int iy) const;
};

struct RunConfig {
  double lambda = 2.0;
  double mu = 1.0;
  double omega = 1.0;
  ParametricBoundary scatterer = make_circle(Vec2::Zero(), 1.0);
  int n_boundary = 128;
  int m_directions = 64;
  double noise_level = 0.0;
  std::uint64_t seed = 1;
  GridSpec grid;
  double test_radius = 0.3;
  int nB = 32;
  std::optional<double> delta;
  std::optional<int> r_max;

  ElasticMedium medium() const { return make_medium(lambda, mu, omega); }
};

// Flat "key = value" text with '#' comments. Throws ParameterError with the
// offending line on unknown keys, bad values or violated invariants.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void validate_config(const RunConfig& config);

// Synthesizes F (with noise when noise_level > 0) for the configured scatterer.
FarFieldOperatorMatrix synthesize_farfield(const RunConfig& config);

struct Calibration {
  double delta;
  int r_max;
  std::string how;  // "auto", "explicit" or "mixed"
};

// ||W^{1/2} F W^{-1/2}||_2; the scale every threshold refers to.
double farfield_scale(const FarFieldOperatorMatrix& f, const WeightedDirectionSpace& space);

// delta = max(noise_level, 1e-8) ||F||; r_max = count for the reference disk + 2.
Calibration calibrate(const FarFieldOperatorMatrix& f, const WeightedDirectionSpace& space,
                      const TestDisk& reference_disk, double noise_level);

struct IndicatorGrid {
  GridSpec grid;
  std::vector<int> counts;  // row-major from (xmin, ymin); -1 marks a failed cell
  Calibration calibration;

  bool failed(int ix, int iy) const { return counts[iy * grid.nx + ix] < 0; }
  bool inside(int ix, int iy) const {
    const int c = counts[iy * grid.nx + ix];
    return c >= 0 && c <= calibration.r_max;
  }
};

// Count of probe eigenvalues above delta for one disk.
int probe_count(const Eigen::MatrixXcd& real_part, const TestDisk& disk,
                const WeightedDirectionSpace& space, const Eigen::MatrixXd& gram_sqrt, double delta);

// Calibrates unless both config.delta and config.r_max are set, then counts
// every grid cell (in parallel, results placed by cell index).
IndicatorGrid sweep(const RunConfig& config, const FarFieldOperatorMatrix& f);

void write_indicator_csv(std::ostream& out, const IndicatorGrid& grid);
void write_indicator_csv(const IndicatorGrid& grid, const std::string& path);
void write_indicator_pgm(std::ostream& out, const IndicatorGrid& grid);
void write_indicator_pgm(const IndicatorGrid& grid, const std::string& path);

struct IndicatorRow {
  double x;
  double y;
  int count;
  int inside;
};

std::vector<IndicatorRow> read_indicator_csv(std::istream& in);

}  // namespace elmono
