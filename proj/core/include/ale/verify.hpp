#pragma once

#include <string>
#include <vector>

#include "ale/invariants.hpp"
#include "ale/profile.hpp"
#include "ale/quadrature.hpp"

namespace ale {

enum class VerifyCheck { Volume, Scalar };

std::string to_string(VerifyCheck check);
VerifyCheck parse_verify_check(const std::string& name);

/// One radius of a verification run. `scaled` is |residual| R for volumes and
/// |residual| R^2 for total scalar curvature; residuals at or below
/// `noise_floor` (quadrature error plus roundoff at the size of the measured
/// value) count as zero for the order test.
struct ResidualRow {
  double R = 0.0;
  double measured = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
  double scaled = 0.0;
  double noise_floor = 0.0;
  bool pass = false;
  std::string error;  // non-empty when the quadrature failed at this radius
};

struct VerifyResult {
  VerifyCheck check = VerifyCheck::Volume;
  std::vector<ResidualRow> rows;
  bool pass = false;
};

/// Compares ball_volume or total_scalar_ball against the predicted large-R
/// values over an increasing schedule. A row passes when its scaled residual
/// is at most twice the previous row's (after the noise floor is applied).
VerifyResult verify_profile(const RadialProfile& profile, const ALEModelInvariants& inv, VerifyCheck check,
                            const std::vector<double>& radii, const QuadratureSpec& quad);

/// R,measured,predicted,residual,scaled,noise_floor,pass with a header.
std::string residual_csv(const VerifyResult& result);

}  // namespace ale
