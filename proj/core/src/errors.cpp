#include "ale/errors.hpp"

#include <sstream>

namespace ale {

namespace {

std::string with_t(const std::string& what, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (t = " << t << ")";
  return os.str();
}

std::string with_estimate(const std::string& what, double value, double err) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (value = " << value << ", error estimate = " << err << ")";
  return os.str();
}

}  // namespace

PositivityError::PositivityError(const std::string& what, double t)
    : Error(with_t(what, t)), t_(t) {}

QuadratureError::QuadratureError(const std::string& what, double value, double error_estimate)
    : Error(with_estimate(what, value, error_estimate)),
      value_(value),
      error_estimate_(error_estimate) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

}  // namespace ale
