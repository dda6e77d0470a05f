#include "ale/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ale/csv.hpp"
#include "ale/errors.hpp"
#include "ale/radial.hpp"

namespace ale {

std::string to_string(VerifyCheck check) { return check == VerifyCheck::Volume ? "volume" : "scalar"; }

VerifyCheck parse_verify_check(const std::string& name) {
  if (name == "volume") return VerifyCheck::Volume;
  if (name == "scalar") return VerifyCheck::Scalar;
  throw PreconditionError("unknown check '" + name + "' (expected volume or scalar)");
}

VerifyResult verify_profile(const RadialProfile& profile, const ALEModelInvariants& inv, VerifyCheck check,
                            const std::vector<double>& radii, const QuadratureSpec& quad) {
  if (radii.empty()) throw PreconditionError("verify needs at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw PreconditionError("verify radii must be strictly increasing");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const int order = check == VerifyCheck::Volume ? 1 : 2;

  VerifyResult out;
  out.check = check;
  out.pass = true;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (double R : radii) {
    ResidualRow row;
    row.R = R;
    try {
      const IntegralEstimate est =
          check == VerifyCheck::Volume ? ball_volume(profile, R, quad) : total_scalar_ball(profile, R, quad);
      row.measured = est.value;
      row.predicted = check == VerifyCheck::Volume ? predicted_ball_volume(inv, R) : predicted_total_scalar(inv);
      row.residual = row.measured - row.predicted;
      row.noise_floor = est.error_estimate + 64.0 * eps * std::max(std::abs(row.measured), std::abs(row.predicted));
      const double effective = std::abs(row.residual) <= row.noise_floor ? 0.0 : std::abs(row.residual);
      row.scaled = std::abs(row.residual) * std::pow(R, order);
      const double scaled_eff = effective * std::pow(R, order);
      row.pass = std::isnan(previous) || scaled_eff <= 2.0 * previous;
      previous = scaled_eff;
    } catch (const Error& err) {
      row.error = err.what();
      row.pass = false;
    }
    out.pass = out.pass && row.pass;
    out.rows.push_back(row);
  }
  return out;
}

std::string residual_csv(const VerifyResult& result) {
  std::ostringstream os;
  os << "R,measured,predicted,residual,scaled,noise_floor,pass\n";
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      std::string msg = row.error;
      for (auto& ch : msg) {
        if (ch == '"') ch = '\'';
      }
      os << format_double(row.R) << ",,,,,,\"error: " << msg << "\"\n";
      continue;
    }
    os << format_double(row.R) << ',' << format_double(row.measured) << ',' << format_double(row.predicted) << ','
       << format_double(row.residual) << ',' << format_double(row.scaled) << ',' << format_double(row.noise_floor)
       << ',' << (row.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

}  // namespace ale
