#include "elmono/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "elmono/boundary.hpp"
#include "elmono/elastic_core.hpp"
#include "elmono/errors.hpp"
#include "elmono/forward.hpp"
#include "elmono/probe.hpp"
#include "elmono/reconstruct.hpp"
#include "elmono/reference_bessel.hpp"
#include "elmono/specfun.hpp"

namespace elmono::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double log_spaced(int i, int n, double a, double b) {
  return a * std::pow(b / a, static_cast<double>(i) / (n - 1));
}

struct Outcome {
  bool passed;
  std::string detail;
};

// 1. J0/Y0/J1/Y1 against the quad-precision oracle, Wronskian, K connection.
Outcome special_functions(const Options& o) {
  const int n = o.quick ? 500 : 2000;
  double worst_abs = 0.0, worst_w = 0.0, worst_k = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = log_spaced(i, n, 1e-3, 100.0);
    const auto p = specfun::bessel_jy01(z);
    const auto q = reference::bessel_jy01(z);
    worst_abs = std::max({worst_abs, std::abs(p.order0.j - q.j0), std::abs(p.order0.y - q.y0),
                          std::abs(p.order1.j - q.j1), std::abs(p.order1.y - q.y1)});
    const double w = p.order1.j * p.order0.y - p.order0.j * p.order1.y;
    const double ref = 2.0 / (kPi * z);
    worst_w = std::max(worst_w, std::abs(w - ref) / ref);
  }
  const std::complex<double> i_unit(0.0, 1.0);
  for (int i = 0; i < n / 4; ++i) {
    const double x = log_spaced(i, n / 4, 1e-2, 20.0);
    const std::complex<double> k0 = i_unit * kPi / 2.0 * reference::hankel1(0, {0.0, x});
    const std::complex<double> k1 = -kPi / 2.0 * reference::hankel1(1, {0.0, x});
    const double a0 = specfun::modbessel_k(0, x), a1 = specfun::modbessel_k(1, x);
    worst_k = std::max({worst_k, std::abs(a0 - k0) / a0, std::abs(a1 - k1) / a1});
  }
  return {worst_abs <= 1e-10 && worst_w <= 1e-10 && worst_k <= 1e-9,
          fmt("J/Y abs err %.2e (<= 1e-10, %d pts on [1e-3,100]); Wronskian rel %.2e (<= 1e-10); "
              "K connection rel %.2e (<= 1e-9)",
              worst_abs, n, worst_w, worst_k)};
}

// 2. Navier residual of each Green's tensor column and reciprocity.
Outcome green_tensor_checks(const Options&) {
  const auto m = make_medium(2, 1, 1);
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> u(-4, 4);
  const double h = 1e-3;
  double worst_pde = 0.0, worst_rec = 0.0;
  int pairs = 0;
  while (pairs < 200) {
    const Vec2 x(u(gen), u(gen)), y(u(gen), u(gen));
    if ((x - y).norm() < 0.5) continue;
    ++pairs;
    const CMat2 a = green_tensor(x, y, m), b = green_tensor(y, x, m);
    worst_rec = std::max(worst_rec, (a - b.transpose()).norm() / a.norm());
    for (int c = 0; c < 2; ++c) {
      auto f = [&](const Vec2& p) -> CVec2 { return green_tensor(p, y, m).col(c); };
      const Vec2 e1(h, 0), e2(0, h);
      const CVec2 f0 = f(x);
      const CVec2 d11 = (f(x + e1) - 2.0 * f0 + f(x - e1)) / (h * h);
      const CVec2 d22 = (f(x + e2) - 2.0 * f0 + f(x - e2)) / (h * h);
      const CVec2 d12 = (f(x + e1 + e2) - f(x + e1 - e2) - f(x - e1 + e2) + f(x - e1 - e2)) / (4 * h * h);
      const CVec2 gd(d11(0) + d12(1), d12(0) + d22(1));
      const CVec2 res = m.mu * (d11 + d22) + (m.lambda + m.mu) * gd + m.omega * m.omega * f0;
      const double scale = m.mu * (d11 + d22).norm() + (m.lambda + m.mu) * gd.norm() + m.omega * m.omega * f0.norm();
      worst_pde = std::max(worst_pde, res.norm() / scale);
    }
  }
  return {worst_pde <= 1e-5 && worst_rec <= 1e-13,
          fmt("PDE residual rel %.2e (<= 1e-5, FD h=1e-3, %d pairs); reciprocity %.2e (<= 1e-13)", worst_pde,
              pairs, worst_rec)};
}

Eigen::VectorXcd point_source_trace(const BoundaryDiscretization& d, const Vec2& z, const CVec2& e,
                                    const ElasticMedium& m) {
  Eigen::VectorXcd f(2 * d.n);
  for (int j = 0; j < d.n; ++j) f.segment<2>(2 * j) = green_tensor(d.nodes[j], z, m) * e;
  return f;
}

double midpoint_residual(const ParametricBoundary& b, int n, const ElasticMedium& m) {
  const auto d = discretize(b, n);
  const auto wave = make_plane_wave(Vec2(std::cos(0.3), std::sin(0.3)), cplx(1.0, 0.0), cplx(0.5, -0.5));
  Eigen::VectorXcd f(2 * n);
  for (int j = 0; j < n; ++j) f.segment<2>(2 * j) = -incident_field(wave, m, d.nodes[j]);
  const Eigen::VectorXcd phi = DirichletSolver(d, m).solve(f);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = (j + 0.5) * 2 * kPi / n;
    const Vec2 x = b.point(t);
    const CVec2 ui = incident_field(wave, m, x);
    worst = std::max(worst, (ui + single_layer_rows(d, t, x, m, Frequency::real) * phi).norm());
    scale = std::max(scale, ui.norm());
  }
  return worst / scale;
}

// 3. Interior point source, midpoint boundary residual and its n-doubling gain.
Outcome forward_solver(const Options&) {
  const auto m = make_medium(2, 1, 1);
  const auto kite = make_kite({0, 0}, 1.0);
  const auto d = discretize(kite, 128);
  const DirichletSolver solver(d, m);
  const Vec2 z(0.2, 0.1);
  const auto dirs = make_directions(32);
  double worst_near = 0.0, worst_far = 0.0;
  for (const CVec2& e : {CVec2(1.0, 0.5), CVec2(cplx(0, 1), -0.3)}) {
    const Eigen::VectorXcd phi = solver.solve(point_source_trace(d, z, e, m));
    for (int k = 0; k < 24; ++k) {
      const double a = 2 * kPi * k / 24;
      for (double r : {3.0, 5.0}) {
        const Vec2 x(r * std::cos(a), r * std::sin(a));
        const CVec2 exact = green_tensor(x, z, m) * e;
        worst_near = std::max(worst_near, (single_layer_potential(phi, d, m, x) - exact).norm() / exact.norm());
      }
    }
    const auto ff = scattered_farfield(phi, d, dirs, m);
    for (int i = 0; i < dirs.m; ++i) {
      const auto k = farfield_kernel(dirs.directions[i], z, m);
      const double scale = (k.kp * e).norm() + (k.ks * e).norm();
      worst_far = std::max(worst_far, ((ff.up[i] - k.kp * e).norm() + (ff.us[i] - k.ks * e).norm()) / scale);
    }
  }
  const double r64 = midpoint_residual(kite, 64, m);
  const double r128 = midpoint_residual(kite, 128, m);
  return {worst_near <= 1e-6 && worst_far <= 1e-6 && r128 <= 1e-6 && r64 / r128 >= 100.0,
          fmt("point source rel %.2e near, %.2e far field (<= 1e-6); midpoint residual %.2e at n=128 "
              "(<= 1e-6), gain %.0fx from n=64 (>= 100)",
              worst_near, worst_far, r128, r64 / r128)};
}

// 4. F = -sqrt(8 pi omega) G S* G* and H* = sqrt(8 pi omega) G S.
Outcome factorization(const Options&) {
  const auto m = make_medium(2, 1, 1);
  const auto d = discretize(make_kite({0, 0}, 1.0), 128);
  const auto dirs = make_directions(64);
  const auto space = make_weighted_space(dirs, m);
  const auto f = assemble_farfield_operator(d, m, dirs);
  const Eigen::MatrixXcd g = assemble_data_to_pattern(d, m, dirs).matrix;
  const Eigen::MatrixXcd s = assemble_single_layer(d, m, Frequency::real).matrix;
  const Eigen::VectorXd g0 = l2_weights(d);
  const Eigen::VectorXd& w = space.w;
  const Eigen::MatrixXcd g_adj = g0.cwiseInverse().asDiagonal() * g.adjoint() * w.asDiagonal();
  const Eigen::MatrixXcd s_adj = g0.cwiseInverse().asDiagonal() * s.adjoint() * g0.asDiagonal();
  const double c = std::sqrt(8 * kPi * m.omega);
  const double fact = weighted_norm(f.matrix + c * g * s_adj * g_adj, space) / weighted_norm(f.matrix, space);

  const Eigen::MatrixXcd h = herglotz_values(d.nodes, dirs, m);
  const Eigen::MatrixXcd h_adj = w.cwiseInverse().asDiagonal() * h.adjoint() * g0.asDiagonal();
  auto op_norm = [&](const Eigen::MatrixXcd& a) {
    const Eigen::MatrixXcd b = w.cwiseSqrt().asDiagonal() * a * g0.cwiseSqrt().cwiseInverse().asDiagonal();
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(b).singularValues()(0);
  };
  const double hid = op_norm(h_adj - c * g * s) / op_norm(h_adj);
  return {fact <= 1e-3 && hid <= 1e-3,
          fmt("factorization residual %.2e (<= 1e-3, kite n=128 m=64); H* identity %.2e (<= 1e-3)", fact, hid)};
}

// 5. Minimum eigenvalue of Sym(Gamma_0 S_i) on every catalog shape.
Outcome coercivity(const Options&) {
  const auto m = make_medium(2, 1, 1);
  const std::vector<ParametricBoundary> shapes = {make_circle({0.1, -0.2}, 0.8), make_ellipse({0, 0}, 1.2, 0.6),
                                                  make_kite({0, 0}, 1.0), make_peanut({0.3, 0.1}, 1.1)};
  double lowest = INFINITY;
  std::string where;
  for (const auto& b : shapes) {
    for (int n : {32, 64, 128}) {
      const auto d = discretize(b, n);
      const Eigen::MatrixXcd s = assemble_single_layer(d, m, Frequency::imaginary_unit).matrix;
      const Eigen::MatrixXcd a = l2_weights(d).cast<cplx>().asDiagonal() * s;
      const Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint());
      const double e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sym, Eigen::EigenvaluesOnly).eigenvalues()(0);
      if (e < lowest) {
        lowest = e;
        where = b.name() + " n=" + std::to_string(n);
      }
    }
  }
  return {lowest > 0.0, fmt("min eigenvalue %.3e at %s (> 0; circle/ellipse/kite/peanut, n=32,64,128)", lowest,
                            where.c_str())};
}

// 6. Localized waves on a protruding disk, with an interior control.
Outcome localized_waves(const Options&) {
  const auto m = make_medium(2, 1, 3);
  const auto d = discretize(make_kite({0, 0}, 1.0), 128);
  const auto dirs = make_directions(64);
  const auto space = make_weighted_space(dirs, m);
  const auto g = assemble_data_to_pattern(d, m, dirs);
  const auto gram_d = sobolev_gram(d, -0.5);
  const Eigen::VectorXd g0 = l2_weights(d);
  const std::vector<double> sigmas = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
  auto ratios = [&](const Vec2& c, double r) {
    const auto disk = make_test_disk(c, r, 32);
    const auto seq = localized_density(herglotz_matrix(disk, space, m), sobolev_gram(disk.disc, 0.5), g, gram_d,
                                       g0, space, sigmas);
    return std::pair{seq.back().herglotz_norm / seq.front().herglotz_norm,
                     seq.front().pattern_norm / seq.back().pattern_norm};
  };
  const auto [grow, decay] = ratios({2.0, 0.0}, 1.2);
  const auto [cgrow, cdecay] = ratios({0.2, 0.1}, 0.6);
  const bool control_fails = cgrow < 10.0 || cdecay < 10.0;
  return {grow >= 10.0 && decay >= 10.0 && control_fails,
          fmt("protruding disk: growth %.1fx, G* decay %.1fx (both >= 10); interior control: growth %.2fx, "
              "decay %.2fx (must not reach both)",
              grow, decay, cgrow, cdecay)};
}

// 7. Counts for interior vs exterior/protruding disks on the unit-disk phantom.
Outcome monotonicity(const Options&) {
  const auto m = make_medium(2, 1, 1);
  const auto dirs = make_directions(64);
  const auto space = make_weighted_space(dirs, m);
  const auto clean = assemble_farfield_operator(discretize(make_circle({0, 0}, 1.0), 128), m, dirs);
  const double rho = 0.45;
  std::vector<Vec2> interior, exterior;
  for (int k = 0; k < 10; ++k) {
    const double a = 2 * kPi * k / 10 + 0.1;
    const double r_in = k % 2 == 0 ? 0.15 : 0.45;
    interior.emplace_back(r_in * std::cos(a), r_in * std::sin(a));
    const double r_out = k % 2 == 0 ? 1.1 : 1.8;
    exterior.emplace_back(r_out * std::cos(a), r_out * std::sin(a));
  }
  bool ok = true;
  std::string detail;
  for (double noise : {0.0, 1e-3}) {
    const auto f = add_noise(clean, noise, 7);
    const Eigen::MatrixXcd re = weighted_real_part(f, space);
    const auto ref = make_test_disk({0, 0}, rho, 32);
    const Calibration cal = calibrate(f, space, ref, noise);
    const Eigen::MatrixXd root = spd_sqrt(sobolev_gram(ref.disc, 0.5).matrix);
    int max_in = 0, min_out = 1 << 30;
    for (const Vec2& c : interior) max_in = std::max(max_in, probe_count(re, make_test_disk(c, rho, 32), space, root, cal.delta));
    for (const Vec2& c : exterior) min_out = std::min(min_out, probe_count(re, make_test_disk(c, rho, 32), space, root, cal.delta));
    ok = ok && max_in <= cal.r_max && min_out > cal.r_max;
    detail += fmt("%snoise %g: r_max %d, interior max %d, exterior min %d", detail.empty() ? "" : "; ", noise,
                  cal.r_max, max_in, min_out);
  }
  return {ok, detail + fmt(" (radius %.2f, 10+10 disks)", rho)};
}

double jaccard(const IndicatorGrid& g, const ParametricBoundary& b) {
  int both = 0, either = 0;
  for (int iy = 0; iy < g.grid.ny; ++iy) {
    for (int ix = 0; ix < g.grid.nx; ++ix) {
      const bool truth = b.contains(g.grid.point(ix, iy));
      const bool found = g.inside(ix, iy);
      both += truth && found;
      either += truth || found;
    }
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / either;
}

RunConfig phantom(const ParametricBoundary& b, double omega, double rho, int cells) {
  RunConfig c;
  c.omega = omega;
  c.scatterer = b;
  c.test_radius = rho;
  c.grid = {-2, 2, -2, 2, cells, cells};
  return c;
}

// 8. Jaccard overlap of the classified-inside set on the disk and kite phantoms.
Outcome end_to_end(const Options& o) {
  const int cells = o.quick ? 21 : 41;
  const RunConfig disk = phantom(make_circle({0, 0}, 1.0), 1.0, 0.3, cells);
  const RunConfig kite = phantom(make_kite({0, 0}, 1.0), 2.0, 0.3, cells);
  const double jd = jaccard(sweep(disk, synthesize_farfield(disk)), disk.scatterer);
  const double jk = jaccard(sweep(kite, synthesize_farfield(kite)), kite.scatterer);
  return {jd >= 0.6 && jk >= 0.6,
          fmt("Jaccard disk %.3f (omega 1, radius 0.3), kite %.3f (omega 2, radius 0.3) on %dx%d (>= 0.6)", jd, jk,
              cells, cells)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Two complete forward + reconstruct runs produce identical files.
Outcome determinism(const Options& o) {
  namespace fs = std::filesystem;
  const fs::path dir = o.scratch_dir.empty() ? fs::temp_directory_path() / "elmono_determinism" : fs::path(o.scratch_dir);
  fs::create_directories(dir);
  RunConfig c = phantom(make_kite({0.1, 0}, 1.0), 1.5, 0.3, 15);
  c.noise_level = 1e-3;
  c.seed = 12345;
  std::string files[2][3];
  for (int run = 0; run < 2; ++run) {
    const std::string tag = "run" + std::to_string(run);
    const fs::path ffd = dir / (tag + ".ffd"), csv = dir / (tag + ".csv"), pgm = dir / (tag + ".pgm");
    write_ffd(ffd.string(), synthesize_farfield(c));
    const IndicatorGrid g = sweep(c, read_ffd(ffd.string()));
    write_indicator_csv(g, csv.string());
    write_indicator_pgm(g, pgm.string());
    files[run][0] = slurp(ffd);
    files[run][1] = slurp(csv);
    files[run][2] = slurp(pgm);
  }
  bool ok = true;
  std::string detail;
  const char* names[3] = {".ffd", "CSV", "PGM"};
  for (int k = 0; k < 3; ++k) {
    const bool same = !files[0][k].empty() && files[0][k] == files[1][k];
    ok = ok && same;
    detail += fmt("%s%s %zu bytes %s", k ? ", " : "", names[k], files[0][k].size(), same ? "identical" : "DIFFER");
  }
  return {ok, detail};
}

struct Entry {
  const char* name;
  Outcome (*fn)(const Options&);
};

const Entry kEntries[kCriterionCount] = {
    {"special functions", special_functions}, {"Green's tensor", green_tensor_checks},
    {"forward solver", forward_solver},       {"factorization", factorization},
    {"S_i coercivity", coercivity},           {"localized waves", localized_waves},
    {"monotonicity separation", monotonicity}, {"end-to-end reconstruction", end_to_end},
    {"determinism", determinism},
};

}  // namespace

CriterionResult run_criterion(int id, const Options& options) {
  if (id < 1 || id > kCriterionCount) throw ParameterError("no acceptance criterion " + std::to_string(id));
  const Entry& e = kEntries[id - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = e.fn(options);
  } catch (const std::exception& ex) {
    out = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CriterionResult r{id, e.name, out.passed, out.detail, secs};
  if (options.on_result) options.on_result(r);
  return r;
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) results.push_back(run_criterion(id, options));
  return results;
}

std::string format_result(const CriterionResult& r) {
  return fmt("[%s] %d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

}  // namespace elmono::acceptance
