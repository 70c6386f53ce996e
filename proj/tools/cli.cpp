#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elmono/acceptance.hpp"
#include "elmono/errors.hpp"
#include "elmono/reconstruct.hpp"

namespace elmono::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void note_medium_mismatch(const RunConfig& c, const FarFieldOperatorMatrix& f, std::ostream& out) {
  const ElasticMedium& m = f.medium;
  if (c.lambda != m.lambda || c.mu != m.mu || c.omega != m.omega || c.m_directions != f.m) {
    out << "note: data header (lambda " << num(m.lambda) << ", mu " << num(m.mu) << ", omega " << num(m.omega)
        << ", m " << f.m << ") differs from the config; using the data header\n";
  }
}

void print_calibration(const Calibration& c, std::ostream& out) {
  out << "calibration: delta " << num(c.delta) << ", r_max " << c.r_max << " (" << c.how << ")\n";
}

int forward(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  const RunConfig c = load_config(config_path);
  const FarFieldOperatorMatrix f = synthesize_farfield(c);
  write_ffd(out_path, f);
  out << "wrote " << out_path << ": " << c.scatterer.name() << ", omega " << num(c.omega) << ", m " << f.m
      << ", noise " << num(c.noise_level) << " (seed " << c.seed << ")\n";
  return 0;
}

int reconstruct(const std::string& config_path, const std::string& data_path, const std::string& csv_path,
                const std::string& pgm_path, std::optional<double> delta, std::optional<int> r_max,
                std::ostream& out) {
  RunConfig c = load_config(config_path);
  if (delta) c.delta = delta;
  if (r_max) c.r_max = r_max;
  validate_config(c);
  const FarFieldOperatorMatrix f = read_ffd(data_path);
  note_medium_mismatch(c, f, out);
  const IndicatorGrid g = sweep(c, f);
  write_indicator_csv(g, csv_path);
  if (!pgm_path.empty()) write_indicator_pgm(g, pgm_path);
  print_calibration(g.calibration, out);
  const long inside = std::count_if(g.counts.begin(), g.counts.end(),
                                    [&](int k) { return k >= 0 && k <= g.calibration.r_max; });
  const long failed = std::count(g.counts.begin(), g.counts.end(), -1);
  out << "grid " << g.grid.nx << "x" << g.grid.ny << ": " << inside << " inside, " << failed << " failed\n";
  out << "wrote " << csv_path << (pgm_path.empty() ? "" : " and " + pgm_path) << "\n";
  return 0;
}

int spectrum(const std::string& data_path, const std::string& config_path, const std::vector<double>& center,
             double radius, int top, std::optional<double> delta, std::optional<int> r_max, std::ostream& out) {
  RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
  c.test_radius = radius;
  validate_config(c);
  if (top < 1) throw ParameterError("--top must be >= 1");
  const FarFieldOperatorMatrix f = read_ffd(data_path);
  if (!config_path.empty()) note_medium_mismatch(c, f, out);
  const WeightedDirectionSpace space = make_weighted_space(make_directions(f.m), f.medium);
  const double noise = f.has_noise ? f.noise.level : c.noise_level;

  const GridSpec& g = c.grid;
  const TestDisk reference =
      make_test_disk(Vec2(0.5 * (g.xmin + g.xmax), 0.5 * (g.ymin + g.ymax)), radius, c.nB);
  Calibration cal{};
  if (delta && r_max) {
    cal = {*delta, *r_max, "explicit"};
  } else {
    cal = calibrate(f, space, reference, noise);
    if (delta) {
      const auto root = spd_sqrt(sobolev_gram(reference.disc, 0.5).matrix);
      cal = {*delta, probe_count(weighted_real_part(f, space), reference, space, root, *delta) + 2, "mixed"};
    }
    if (r_max) {
      cal.r_max = *r_max;
      cal.how = "mixed";
    }
  }

  const TestDisk disk = make_test_disk(Vec2(center[0], center[1]), radius, c.nB);
  const auto root = spd_sqrt(sobolev_gram(disk.disc, 0.5).matrix);
  const std::vector<double> eigs =
      hermitian_eigenvalues(probe_matrix(weighted_real_part(f, space), disk, space, root));
  const int count = count_above(eigs, cal.delta).count_above;
  print_calibration(cal, out);
  out << "disk (" << num(center[0]) << ", " << num(center[1]) << ") radius " << num(radius) << ": count " << count
      << " -> " << (count <= cal.r_max ? "inside" : "outside") << "\n";
  const int shown = std::min<int>(top, static_cast<int>(eigs.size()));
  out << "top " << shown << " eigenvalues:\n";
  for (int i = 0; i < shown; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%4d  %.10e\n", i + 1, eigs[eigs.size() - 1 - i]);
    out << buf;
  }
  return 0;
}

int validate(bool quick, std::ostream& out) {
  acceptance::Options options;
  options.quick = quick;
  options.on_result = [&](const acceptance::CriterionResult& r) {
    out << acceptance::format_result(r) << "\n" << std::flush;
  };
  const auto results = acceptance::run_all(options);
  const long passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << passed << "/" << results.size() << " criteria passed" << (quick ? " (quick)" : "") << "\n";
  return passed == static_cast<long>(results.size()) ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonicity-based shape reconstruction of rigid elastic obstacles"};
  app.name("elmono");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_path, out_path, data_path, pgm_path;
  std::optional<double> delta;
  std::optional<int> r_max;
  std::vector<double> center;
  double radius = 0.0;
  int top = 10;
  bool quick = false;

  auto* fwd = app.add_subcommand("forward", "synthesize far-field data for a configured scatterer");
  fwd->add_option("--config", config_path, "run configuration")->required();
  fwd->add_option("--out", out_path, "output .ffd file")->required();

  auto* rec = app.add_subcommand("reconstruct", "sweep test disks over the grid and classify each cell");
  rec->add_option("--config", config_path, "run configuration")->required();
  rec->add_option("--data", data_path, "far-field data (.ffd)")->required();
  rec->add_option("--out", out_path, "indicator CSV")->required();
  rec->add_option("--pgm", pgm_path, "indicator image (plain PGM)");
  rec->add_option("--delta", delta, "eigenvalue threshold (default: calibrated)");
  rec->add_option("--rmax", r_max, "largest count classified inside (default: calibrated)");

  auto* spec = app.add_subcommand("spectrum", "print the top probe eigenvalues for one test disk");
  spec->add_option("--data", data_path, "far-field data (.ffd)")->required();
  spec->add_option("--center", center, "disk center x,y")->required()->delimiter(',')->expected(2);
  spec->add_option("--radius", radius, "disk radius")->required();
  spec->add_option("--top", top, "number of eigenvalues to print");
  spec->add_option("--config", config_path, "configuration for nB and the calibration reference");
  spec->add_option("--delta", delta, "eigenvalue threshold (default: calibrated)");
  spec->add_option("--rmax", r_max, "largest count classified inside (default: calibrated)");

  auto* val = app.add_subcommand("validate", "run the acceptance criteria");
  val->add_flag("--quick", quick, "reduced grids for a fast check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fwd) return forward(config_path, out_path, out);
    if (*rec) return reconstruct(config_path, data_path, out_path, pgm_path, delta, r_max, out);
    if (*spec) return spectrum(data_path, config_path, center, radius, top, delta, r_max, out);
    return validate(quick, out);
  } catch (const InteriorEigenvalueError& e) {
    err << "error: " << e.what() << " (condition number " << num(e.condition()) << ")\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace elmono::cli
