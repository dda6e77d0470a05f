#include "ale/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ale/errors.hpp"

namespace ale {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& text, const std::string& where) {
  const std::string s = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw SchemaError(where, "not a finite number: '" + s + "'");
  }
  return x;
}

}  // namespace

std::vector<std::pair<double, double>> read_samples(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    const auto comma = body.find(',');
    if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos) {
      throw SchemaError(where, "expected exactly two comma-separated columns");
    }
    if (!header) {
      if (trim(body.substr(0, comma)) != "t" || trim(body.substr(comma + 1)) != "f") {
        throw SchemaError(where, "expected header 't,f'");
      }
      header = true;
      continue;
    }
    out.emplace_back(parse_field(body.substr(0, comma), where), parse_field(body.substr(comma + 1), where));
  }
  if (!header) throw SchemaError("line 1", "missing header 't,f'");
  return out;
}

std::vector<std::pair<double, double>> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open samples file");
  return read_samples(in);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

}  // namespace ale
