#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "ale/invariants.hpp"

namespace ale {

/// One singular point of the base orbifold together with the local model
/// glued in. mu and lap_mu are the moment map and its Laplacian at the
/// point, as vectors over a basis of the reduced automorphism algebra.
struct SingularPointDatum {
  std::string id;
  int gamma = 2;
  Eigen::VectorXd mu;
  Eigen::VectorXd lap_mu;
  ALEModelInvariants inv;
};

struct OrbifoldConfig {
  int m = 2;
  int d = 0;
  double s_bar = 0.0;
  Eigen::VectorXd base_futaki;  // empty is read as zero
  std::vector<SingularPointDatum> points;

  /// Throws DimensionError on length mismatches and PreconditionError on
  /// everything else (m < 2, no points, gamma mismatch, non-finite entries).
  void validate() const;
  /// base_futaki padded to length d.
  Eigen::VectorXd base_futaki_or_zero() const;
};

/// Fut(V, omega_eps) ~ (F0 + eps^{m-1} C_lead + eps^m C_next) . V
struct FutakiExpansion {
  Eigen::VectorXd F0;
  Eigen::VectorXd C_lead;
  Eigen::VectorXd C_next;
  int m = 2;
};

/// w_p = s_bar mu(p) + lap_mu(p)
Eigen::VectorXd weight(const OrbifoldConfig& config, const SingularPointDatum& point);

FutakiExpansion expansion(const OrbifoldConfig& config);

/// D1 = sum e_p/gamma_p mu(p),  D2 = sum a_p w_p.
struct ScalarFlatReduction {
  Eigen::VectorXd D1;
  Eigen::VectorXd D2;
};

/// Throws PreconditionError if some model is not scalar flat.
ScalarFlatReduction scalar_flat_reduction(const OrbifoldConfig& config);

/// 16 pi^m / (m-2)!, the factor in C_lead = -k D1 and (Ricci flat) C_next = -k D2.
double bridge_factor(int m);

/// Truncated value; the O(eps^{m+1}) remainder is dropped.
double evaluate(const FutakiExpansion& exp, double epsilon, const Eigen::VectorXd& v);

}  // namespace ale
