#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "elmono/errors.hpp"
#include "elmono/forward.hpp"

namespace elmono {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw DataError("ffd: cannot parse " + what + " '" + token + "'");
  }
  if (used != token.size() || !std::isfinite(v)) {
    throw DataError("ffd: invalid " + what + " '" + token + "'");
  }
  return v;
}

bool is_key(const std::string& token) {
  return token == "lambda" || token == "mu" || token == "omega" || token == "m" ||
         token == "noise_level" || token == "seed";
}

}  // namespace

void write_ffd(std::ostream& out, const FarFieldOperatorMatrix& f) {
  const int m = f.m;
  if (f.matrix.rows() != 2 * m || f.matrix.cols() != 2 * m) {
    throw ParameterError("far-field matrix dimensions do not match m");
  }
  out << "ffd 1\n";
  out << "# elastic far-field operator, blocks [pp ps; sp ss], entries re im\n";
  out << "lambda " << fmt(f.medium.lambda) << '\n';
  out << "mu " << fmt(f.medium.mu) << '\n';
  out << "omega " << fmt(f.medium.omega) << '\n';
  out << "m " << m << '\n';
  if (f.has_noise) {
    out << "noise_level " << fmt(f.noise.level) << '\n';
    out << "seed " << f.noise.seed << '\n';
  }
  for (int i = 0; i < 2 * m; ++i) {
    std::string line;
    for (int j = 0; j < 2 * m; ++j) {
      if (j > 0) line += ' ';
      line += fmt(f.matrix(i, j).real());
      line += ' ';
      line += fmt(f.matrix(i, j).imag());
    }
    line += '\n';
    out << line;
  }
}

void write_ffd(const std::string& path, const FarFieldOperatorMatrix& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_ffd(out, f);
  out.flush();
  if (!out) throw DataError("write to '" + path + "' failed");
}

FarFieldOperatorMatrix read_ffd(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("ffd: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream ls(line);
    std::string magic, version, extra;
    ls >> magic >> version;
    if (magic != "ffd") throw DataError("ffd: missing 'ffd' magic line");
    if (version != "1" || (ls >> extra)) throw DataError("ffd: unsupported format version '" + version + "'");
  }

  std::map<std::string, std::string> header;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (rows.empty() && std::isalpha(static_cast<unsigned char>(first[0])) && first != "nan" &&
        first != "inf") {
      if (!is_key(first)) throw DataError("ffd: unknown header key '" + first + "'");
      std::string value, extra;
      if (!(ls >> value) || (ls >> extra)) throw DataError("ffd: header '" + first + "' needs one value");
      if (!header.emplace(first, value).second) throw DataError("ffd: duplicate key '" + first + "'");
      continue;
    }
    rows.push_back(line);
  }
  for (const char* key : {"lambda", "mu", "omega", "m"}) {
    if (!header.count(key)) throw DataError(std::string("ffd: missing header key '") + key + "'");
  }
  if (header.count("noise_level") != header.count("seed")) {
    throw DataError("ffd: noise_level and seed must appear together");
  }

  FarFieldOperatorMatrix f;
  try {
    f.medium = make_medium(parse_double(header["lambda"], "lambda"), parse_double(header["mu"], "mu"),
                           parse_double(header["omega"], "omega"));
  } catch (const ParameterError& e) {
    throw DataError(std::string("ffd: ") + e.what());
  }
  const double md = parse_double(header["m"], "m");
  if (md != std::floor(md) || md < 2 || md > 1e5 || static_cast<long>(md) % 2 != 0) {
    throw DataError("ffd: m must be an even integer >= 2");
  }
  f.m = static_cast<int>(md);
  if (header.count("noise_level")) {
    f.has_noise = true;
    f.noise.level = parse_double(header["noise_level"], "noise_level");
    const std::string& s = header["seed"];
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw DataError("ffd: seed must be a non-negative integer");
    }
    try {
      f.noise.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw DataError("ffd: seed out of range");
    }
  }

  const int n = 2 * f.m;
  if (static_cast<int>(rows.size()) != n) {
    throw DataError("ffd: expected " + std::to_string(n) + " matrix rows, found " +
                    std::to_string(rows.size()));
  }
  f.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    std::istringstream ls(rows[i]);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (static_cast<int>(tokens.size()) != 2 * n) {
      throw DataError("ffd: row " + std::to_string(i) + " has " + std::to_string(tokens.size()) +
                      " fields, expected " + std::to_string(2 * n));
    }
    for (int j = 0; j < n; ++j) {
      f.matrix(i, j) = {parse_double(tokens[2 * j], "entry"), parse_double(tokens[2 * j + 1], "entry")};
    }
  }
  return f;
}

FarFieldOperatorMatrix read_ffd(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_ffd(in);
}

}  // namespace elmono
