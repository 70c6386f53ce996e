#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "elmono/errors.hpp"
#include "elmono/reconstruct.hpp"

using namespace elmono;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig disk_phantom() {
  RunConfig c;
  c.grid = {-2, 2, -2, 2, 21, 21};
  c.test_radius = 0.3;
  return c;
}

const FarFieldOperatorMatrix& disk_data() {
  static const FarFieldOperatorMatrix f = synthesize_farfield(disk_phantom());
  return f;
}

const IndicatorGrid& disk_sweep() {
  static const IndicatorGrid g = sweep(disk_phantom(), disk_data());
  return g;
}

std::string csv_of(const IndicatorGrid& g) {
  std::ostringstream out;
  write_indicator_csv(out, g);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("reconstruct") {

TEST_CASE("config parsing") {
  const RunConfig c = parse(
      "# kite phantom\n"
      "lambda = 3\nmu = 1.5\nomega = 2\n"
      "scatterer = kite\nscatterer.center = 0.5,-0.25\nscatterer.scale = 1.2\n"
      "n_boundary = 96   # trailing comment\n"
      "m_directions = 32\nnoise_level = 0.01\nseed = 7\n"
      "grid.xmin = -3\ngrid.xmax = 3\ngrid.nx = 11\ngrid.ny = 5\n"
      "test_radius = 0.25\nnB = 24\ndelta = auto\nr_max = 6\n");
  CHECK(c.lambda == 3.0);
  CHECK(c.mu == 1.5);
  CHECK(c.omega == 2.0);
  CHECK(c.scatterer.kind == ShapeKind::kite);
  CHECK(c.scatterer.center == Vec2(0.5, -0.25));
  CHECK(c.scatterer.a == 1.2);
  CHECK(c.n_boundary == 96);
  CHECK(c.m_directions == 32);
  CHECK(c.noise_level == 0.01);
  CHECK(c.seed == 7);
  CHECK(c.grid.xmin == -3.0);
  CHECK(c.grid.ymax == 2.0);
  CHECK(c.grid.nx == 11);
  CHECK(c.grid.ny == 5);
  CHECK(c.test_radius == 0.25);
  CHECK(c.nB == 24);
  CHECK_FALSE(c.delta.has_value());
  CHECK(c.r_max == 6);

  const RunConfig e = parse("scatterer = ellipse\nscatterer.a = 1.5\nscatterer.b = 0.5\n");
  CHECK(e.scatterer.kind == ShapeKind::ellipse);
  CHECK(parse("").n_boundary == 128);
  CHECK(parse("delta = 1e-5").delta == 1e-5);
}

TEST_CASE("config errors") {
  for (const char* bad : {"lamda = 2\n", "lambda = 2\nlambda = 3\n", "lambda\n", "lambda = abc\n",
                          "mu = 0\n", "lambda = -1\n", "omega = 0\n", "scatterer = square\n",
                          "scatterer = circle\nscatterer.a = 2\n", "grid.nx = 1\n",
                          "grid.xmin = 3\n", "grid.ymax = nan\n", "test_radius = 0\n", "n_boundary = 33\n",
                          "m_directions = 7\n", "nB = 8\n", "noise_level = 1\n", "noise_level = -0.1\n",
                          "delta = 0\n", "r_max = -1\n", "seed = -3\n", "n_boundary = 64.5\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(validate_config(parse(bad)), ParameterError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/dir/run.cfg"), ParameterError);
}

TEST_CASE("grid points") {
  const GridSpec g{-2, 2, -1, 1, 5, 3};
  CHECK(g.point(0, 0) == Vec2(-2, -1));
  CHECK(g.point(4, 2) == Vec2(2, 1));
  CHECK(g.point(2, 1) == Vec2(0, 0));
}

TEST_CASE("calibration") {
  const auto& f = disk_data();
  const auto space = make_weighted_space(make_directions(f.m), f.medium);
  const double norm = farfield_scale(f, space);
  const auto ref = make_test_disk({0, 0}, 0.3, 32);
  const Calibration c0 = calibrate(f, space, ref, 0.0);
  CHECK(c0.delta == doctest::Approx(1e-8 * norm).epsilon(1e-14));
  CHECK(c0.how == "auto");
  const Calibration c1 = calibrate(f, space, ref, 1e-3);
  const Calibration c2 = calibrate(f, space, ref, 2e-3);
  CHECK(c1.delta == doctest::Approx(1e-3 * norm).epsilon(1e-14));
  CHECK(c2.delta == doctest::Approx(2.0 * c1.delta).epsilon(1e-14));
  CHECK(c2.delta >= c1.delta);
  CHECK(c1.delta >= c0.delta);
  CHECK(c0.r_max >= 2);
  MESSAGE("disk phantom r_max " << c0.r_max << " at delta " << c0.delta);

  FarFieldOperatorMatrix zero = f;
  zero.matrix.setZero();
  CHECK_THROWS_AS(calibrate(zero, space, ref, 0.0), DataError);
  zero.matrix(0, 0) = NAN;
  CHECK_THROWS_AS(calibrate(zero, space, ref, 0.0), DataError);
}

TEST_CASE("disk phantom sweep") {
  const IndicatorGrid& g = disk_sweep();
  const double cell = (g.grid.xmax - g.grid.xmin) / (g.grid.nx - 1);
  const double rho = 0.3;
  int inside = 0;
  for (int iy = 0; iy < g.grid.ny; ++iy) {
    for (int ix = 0; ix < g.grid.nx; ++ix) {
      const double r = g.grid.point(ix, iy).norm();
      CAPTURE(g.grid.point(ix, iy).transpose());
      CHECK_FALSE(g.failed(ix, iy));
      CHECK(g.inside(ix, iy) == (g.counts[iy * g.grid.nx + ix] <= g.calibration.r_max));
      if (g.inside(ix, iy)) {
        ++inside;
        CHECK(r <= 1.0 + rho + cell);
      }
      if (r <= 1.0 - rho - cell) CHECK(g.inside(ix, iy));
    }
  }
  CHECK(inside > 0);

  // Rerun gives identical bytes.
  CHECK(csv_of(sweep(disk_phantom(), disk_data())) == csv_of(g));
}

TEST_CASE("far-away scatterer gives an all-outside grid") {
  RunConfig c = disk_phantom();
  c.scatterer = make_circle({10, 10}, 0.5);
  c.grid.nx = c.grid.ny = 9;
  const auto f = synthesize_farfield(c);
  // The grid centroid is not inside this scatterer, so calibrate on a disk
  // that is, and pass the result explicitly.
  const auto space = make_weighted_space(make_directions(f.m), f.medium);
  const Calibration cal = calibrate(f, space, make_test_disk({10, 10}, 0.3, 32), 0.0);
  c.delta = cal.delta;
  c.r_max = cal.r_max;
  const IndicatorGrid g = sweep(c, f);
  CHECK(g.calibration.how == "explicit");
  for (int iy = 0; iy < g.grid.ny; ++iy) {
    for (int ix = 0; ix < g.grid.nx; ++ix) CHECK_FALSE(g.inside(ix, iy));
  }
  std::ostringstream pgm;
  write_indicator_pgm(pgm, g);
  const auto lines = lines_of(pgm.str());
  REQUIRE(lines.size() == 3 + 9);
  for (std::size_t i = 3; i < lines.size(); ++i) CHECK(lines[i] == "0 0 0 0 0 0 0 0 0");
}

TEST_CASE("CSV output") {
  IndicatorGrid g;
  g.grid = {0, 1, 0, 1, 2, 2};
  g.counts = {1, 5, 2, -1};
  g.calibration = {1e-8, 2, "explicit"};
  const std::string csv = csv_of(g);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "x,y,count,inside");
  CHECK(lines[1] == "0,0,1,1");
  CHECK(lines[2] == "1,0,5,0");
  CHECK(lines[4] == "1,1,-1,0");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');

  std::istringstream in(csv_of(disk_sweep()));
  const auto rows = read_indicator_csv(in);
  REQUIRE(rows.size() == disk_sweep().counts.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].count == disk_sweep().counts[i]);
    const int ix = static_cast<int>(i) % disk_sweep().grid.nx, iy = static_cast<int>(i) / disk_sweep().grid.nx;
    CHECK(rows[i].x == disk_sweep().grid.point(ix, iy).x());
    CHECK(rows[i].y == disk_sweep().grid.point(ix, iy).y());
  }
  std::istringstream bad("x,y,count\n0,0,1\n");
  CHECK_THROWS_AS(read_indicator_csv(bad), DataError);
}

TEST_CASE("PGM output") {
  IndicatorGrid g;
  g.grid = {0, 1, 0, 1, 3, 2};
  g.counts = {0, 9, -1, 9, 9, 0};
  g.calibration = {1e-8, 2, "explicit"};
  std::ostringstream out;
  write_indicator_pgm(out, g);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "P2");
  CHECK(lines[1] == "3 2");
  CHECK(lines[2] == "255");
  CHECK(lines[3] == "0 0 255");   // top row is ymax
  CHECK(lines[4] == "255 0 128");

  std::ostringstream phantom;
  write_indicator_pgm(phantom, disk_sweep());
  const auto img = lines_of(phantom.str());
  REQUIRE(img.size() == 3 + 21);
  for (std::size_t i = 3; i < img.size(); ++i) {
    std::istringstream row(img[i]);
    std::vector<int> px;
    for (int v; row >> v;) px.push_back(v);
    REQUIRE(px.size() == 21);
    CAPTURE(i);
    CHECK(std::equal(px.begin(), px.end(), px.rbegin()));
  }
}

}  // TEST_SUITE
