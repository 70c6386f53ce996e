#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "elmono/errors.hpp"
#include "elmono/reconstruct.hpp"

namespace elmono {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(d)) {
    throw ParameterError("config: '" + key + "' expects a finite number, got '" + v + "'");
  }
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 9e15) {
    throw ParameterError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return static_cast<long long>(d);
}

Vec2 to_point(const std::string& key, const std::string& v) {
  const auto comma = v.find(',');
  if (comma == std::string::npos) throw ParameterError("config: '" + key + "' expects 'x,y'");
  return {to_double(key, trim(v.substr(0, comma))), to_double(key, trim(v.substr(comma + 1)))};
}

}  // namespace

Vec2 GridSpec::point(int ix, int iy) const {
  return {xmin + (xmax - xmin) * ix / (nx - 1), ymin + (ymax - ymin) * iy / (ny - 1)};
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParameterError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw ParameterError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }

  std::string shape = "circle";
  Vec2 center = Vec2::Zero();
  std::map<std::string, double> shape_params;
  for (const auto& [key, v] : kv) {
    if (key == "lambda") c.lambda = to_double(key, v);
    else if (key == "mu") c.mu = to_double(key, v);
    else if (key == "omega") c.omega = to_double(key, v);
    else if (key == "scatterer") shape = v;
    else if (key == "scatterer.center") center = to_point(key, v);
    else if (key == "scatterer.radius" || key == "scatterer.scale" || key == "scatterer.a" ||
             key == "scatterer.b") shape_params[key.substr(10)] = to_double(key, v);
    else if (key == "n_boundary") c.n_boundary = static_cast<int>(to_int(key, v));
    else if (key == "m_directions") c.m_directions = static_cast<int>(to_int(key, v));
    else if (key == "noise_level") c.noise_level = to_double(key, v);
    else if (key == "seed") {
      const long long s = to_int(key, v);
      if (s < 0) throw ParameterError("config: seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "grid.xmin") c.grid.xmin = to_double(key, v);
    else if (key == "grid.xmax") c.grid.xmax = to_double(key, v);
    else if (key == "grid.ymin") c.grid.ymin = to_double(key, v);
    else if (key == "grid.ymax") c.grid.ymax = to_double(key, v);
    else if (key == "grid.nx") c.grid.nx = static_cast<int>(to_int(key, v));
    else if (key == "grid.ny") c.grid.ny = static_cast<int>(to_int(key, v));
    else if (key == "test_radius") c.test_radius = to_double(key, v);
    else if (key == "nB") c.nB = static_cast<int>(to_int(key, v));
    else if (key == "delta") {
      if (v != "auto") c.delta = to_double(key, v);
    }
    else if (key == "r_max") {
      if (v != "auto") c.r_max = static_cast<int>(to_int(key, v));
    }
    else throw ParameterError("config: unknown key '" + key + "'");
  }

  auto take = [&](const std::string& name, double fallback) {
    const auto it = shape_params.find(name);
    const double v = it == shape_params.end() ? fallback : it->second;
    shape_params.erase(name);
    return v;
  };
  if (shape == "circle") c.scatterer = make_circle(center, take("radius", 1.0));
  else if (shape == "ellipse") {
    const double a = take("a", 1.0);
    c.scatterer = make_ellipse(center, a, take("b", 0.5));
  }
  else if (shape == "kite") c.scatterer = make_kite(center, take("scale", 1.0));
  else if (shape == "peanut") c.scatterer = make_peanut(center, take("scale", 1.0));
  else throw ParameterError("config: unknown scatterer '" + shape + "'");
  if (!shape_params.empty()) {
    throw ParameterError("config: 'scatterer." + shape_params.begin()->first + "' does not apply to " + shape);
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config '" + path + "'");
  return parse_config(in);
}

void validate_config(const RunConfig& c) {
  (void)c.medium();
  const GridSpec& g = c.grid;
  if (!std::isfinite(g.xmin) || !std::isfinite(g.xmax) || !std::isfinite(g.ymin) ||
      !std::isfinite(g.ymax) || !(g.xmin < g.xmax) || !(g.ymin < g.ymax)) {
    throw ParameterError("config: grid bounds must be finite with min < max");
  }
  if (g.nx < 2 || g.ny < 2) throw ParameterError("config: grid.nx and grid.ny must be >= 2");
  if (!(c.test_radius > 0.0)) throw ParameterError("config: test_radius must be positive");
  if (c.n_boundary < 8 || c.n_boundary % 2 != 0) throw ParameterError("config: n_boundary must be even and >= 8");
  if (c.m_directions < 2 || c.m_directions % 2 != 0) throw ParameterError("config: m_directions must be even and >= 2");
  if (c.nB < 16 || c.nB % 2 != 0) throw ParameterError("config: nB must be even and >= 16");
  if (!(c.noise_level >= 0.0) || !(c.noise_level < 1.0)) throw ParameterError("config: noise_level must lie in [0, 1)");
  if (c.delta && !(*c.delta > 0.0)) throw ParameterError("config: delta must be positive");
  if (c.r_max && *c.r_max < 0) throw ParameterError("config: r_max must be non-negative");
}

}  // namespace elmono
