#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace ale {

/// Reads a two-column `t,f` table with a header line. Blank lines and lines
/// starting with '#' are skipped. Throws SchemaError naming the line.
std::vector<std::pair<double, double>> read_samples(std::istream& in);
std::vector<std::pair<double, double>> read_samples(const std::string& path);

/// Full-precision number with an explicit exponent, e.g. -7.8956835208714842e+01.
std::string format_double(double x);

}  // namespace ale
