#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "elmono/boundary.hpp"
#include "elmono/reconstruct.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d(ELMONO_SCRATCH_DIR);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path file(const std::string& name) { return scratch() / name; }

Run run_cli(const std::string& args) {
  const fs::path out = file("stdout.txt"), err = file("stderr.txt");
  const std::string cmd = std::string("\"") + ELMONO_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const char* kDiskConfig =
    "# unit-disk phantom\n"
    "lambda = 2\nmu = 1\nomega = 1\n"
    "scatterer = circle\nscatterer.center = 0,0\nscatterer.radius = 1\n"
    "n_boundary = 128\nm_directions = 64\n"
    "grid.xmin = -2\ngrid.xmax = 2\ngrid.ymin = -2\ngrid.ymax = 2\ngrid.nx = 41\ngrid.ny = 41\n"
    "test_radius = 0.3\nnB = 32\n";

int first_int_after(const std::string& text, const std::string& label) {
  std::smatch m;
  const std::regex re(label + " (-?[0-9]+)");
  REQUIRE(std::regex_search(text, m, re));
  return std::stoi(m[1]);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 1 and print help") {
  CHECK(run_cli("").code == 1);
  const Run r = run_cli("forward --config x.cfg --out y.ffd --bogus");
  CHECK(r.code == 1);
  CHECK(r.err.find("--bogus") != std::string::npos);
  CHECK(r.err.find("Usage:") != std::string::npos);
  CHECK(run_cli("frobnicate").code == 1);
  CHECK(run_cli("spectrum --data d.ffd --center 1 --radius 0.3").code == 1);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("configuration errors exit with 1, data errors with 2") {
  CHECK(run_cli("forward --config \"" + file("missing.cfg").string() + "\" --out x.ffd").code == 1);
  write_text(file("bad.cfg"), "lambda = 2\nlamda = 3\n");
  const Run bad = run_cli("forward --config \"" + file("bad.cfg").string() + "\" --out x.ffd");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("lamda") != std::string::npos);

  write_text(file("small.cfg"), "grid.nx = 5\ngrid.ny = 5\n");
  write_text(file("garbage.ffd"), "ffd 2\nlambda 2\n");
  const Run data = run_cli("reconstruct --config \"" + file("small.cfg").string() + "\" --data \"" +
                          file("garbage.ffd").string() + "\" --out \"" + file("g.csv").string() + "\"");
  CHECK(data.code == 2);
  CHECK(data.err.find("version") != std::string::npos);
  CHECK(run_cli("spectrum --data \"" + file("nothing.ffd").string() + "\" --center 0,0 --radius 0.3").code == 2);
}

TEST_CASE("forward then reconstruct recovers the unit disk") {
  write_text(file("disk.cfg"), kDiskConfig);
  const std::string cfg = "\"" + file("disk.cfg").string() + "\"";
  const std::string ffd = "\"" + file("disk.ffd").string() + "\"";
  REQUIRE(run_cli("forward --config " + cfg + " --out " + ffd).code == 0);

  const Run rec = run_cli("reconstruct --config " + cfg + " --data " + ffd + " --out \"" +
                         file("disk.csv").string() + "\" --pgm \"" + file("disk.pgm").string() + "\"");
  REQUIRE(rec.code == 0);
  CHECK(rec.out.find("calibration: delta") != std::string::npos);
  CHECK(rec.out.find("(auto)") != std::string::npos);

  std::istringstream csv(slurp(file("disk.csv")));
  const auto rows = elmono::read_indicator_csv(csv);
  REQUIRE(rows.size() == 41u * 41u);
  const auto disk = elmono::make_circle({0, 0}, 1.0);
  int both = 0, either = 0;
  for (const auto& r : rows) {
    const bool truth = disk.contains({r.x, r.y});
    both += truth && r.inside;
    either += truth || r.inside;
  }
  const double jaccard = static_cast<double>(both) / either;
  MESSAGE("unit disk Jaccard " << jaccard);
  CHECK(jaccard >= 0.6);
  CHECK(slurp(file("disk.pgm")).rfind("P2\n41 41\n255\n", 0) == 0);

  // Same inputs, same bytes.
  REQUIRE(run_cli("reconstruct --config " + cfg + " --data " + ffd + " --out \"" + file("disk2.csv").string() +
                 "\"")
              .code == 0);
  CHECK(slurp(file("disk.csv")) == slurp(file("disk2.csv")));

  const Run expl = run_cli("reconstruct --config " + cfg + " --data " + ffd + " --out \"" +
                          file("disk3.csv").string() + "\" --delta 1e-6 --rmax 3");
  CHECK(expl.code == 0);
  CHECK(expl.out.find("r_max 3 (explicit)") != std::string::npos);

  const Run inner = run_cli("spectrum --data " + ffd + " --center 0.1,-0.2 --radius 0.3 --top 4");
  REQUIRE(inner.code == 0);
  CHECK(first_int_after(inner.out, "count") <= first_int_after(inner.out, "r_max"));
  CHECK(inner.out.find("-> inside") != std::string::npos);
  CHECK(inner.out.find("top 4 eigenvalues") != std::string::npos);
  const Run outer = run_cli("spectrum --data " + ffd + " --center 1.6,0.4 --radius 0.3");
  REQUIRE(outer.code == 0);
  CHECK(first_int_after(outer.out, "count") > first_int_after(outer.out, "r_max"));

  // The data header wins over a config that disagrees with it.
  write_text(file("other.cfg"), "omega = 2\ngrid.nx = 5\ngrid.ny = 5\n");
  const Run mismatch = run_cli("reconstruct --config \"" + file("other.cfg").string() + "\" --data " + ffd +
                              " --out \"" + file("other.csv").string() + "\"");
  CHECK(mismatch.code == 0);
  CHECK(mismatch.out.find("differs from the config") != std::string::npos);
}

TEST_CASE("validate --quick passes") {
  const Run r = run_cli("validate --quick");
  CHECK(r.code == 0);
  CHECK(r.out.find("9/9 criteria passed (quick)") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

}  // TEST_SUITE
