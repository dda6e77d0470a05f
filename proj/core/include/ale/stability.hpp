#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ale/futaki.hpp"

namespace ale {

struct ToleranceSpec {
  /// Absolute threshold on |e_p| for the Q/P split; relative threshold for a
  /// vanishing sum: ||sum|| <= zero_tol * sum ||term||.
  double zero_tol = 1e-9;
  /// Singular values <= rank_tol * sigma_max do not count toward the rank.
  double rank_tol = 1e-9;

  void validate() const;
};

enum class Regime {
  NonExistenceEqualScale,
  ExistenceSomeNonzeroMass,
  ExistenceAllZeroMass,
  ExistenceMixedScales,
  Inconclusive,
};

std::string to_string(Regime regime);
Regime parse_regime(const std::string& name);
bool is_existence(Regime regime) noexcept;

/// Indices into config.points. Q holds the points with nonzero mass.
struct Partition {
  std::vector<std::size_t> Q;
  std::vector<std::size_t> P;
};

Partition partition(const OrbifoldConfig& config, const ToleranceSpec& tol);

struct Witness {
  Eigen::VectorXd sum_vector;  // the sum whose (non)vanishing decided the regime
  double sum_norm = 0.0;
  double sum_scale = 0.0;      // sum of the term norms
  int rank = 0;
  int d = 0;
  std::vector<std::string> Q;
  std::vector<std::string> P;
  /// Points whose |e| lies within two decades of zero_tol.
  std::vector<std::string> borderline;
};

/// lambda_p(eps) = factor * eps^exponent * (1 + t_p)^power
struct Schedule {
  std::string id;
  double exponent = 1.0;
  double factor = 1.0;
  double power = 0.0;
};

struct Verdict {
  Regime regime = Regime::Inconclusive;
  Witness witness;
  std::vector<Schedule> schedules;
  /// A nonzero mass-weighted (or, with no masses, a-weighted) sum obstructs equal scales.
  bool equal_scale_obstructed = false;
  /// Adjusted-scale conclusion when it differs from the equal-scale one.
  std::optional<Regime> alternative;
  std::vector<Schedule> alternative_schedules;
  ToleranceSpec tolerances;
};

int span_rank(const std::vector<Eigen::VectorXd>& vectors, int d, const ToleranceSpec& tol);

/// Requires base_futaki = 0 and every model scalar flat.
Verdict classify(const OrbifoldConfig& config, const ToleranceSpec& tol = {});

/// d x |S|; column p is a_p w_p for p in P (zero if !include_P) and
/// (e_q/gamma_q) mu(q) for q in Q.
Eigen::MatrixXd balancing_jacobian(const OrbifoldConfig& config, const Partition& part, bool include_P = true);

struct BalancingSolution {
  Eigen::VectorXd t;
  double residual = 0.0;
  int jacobian_rank = 0;
};

/// Minimal-norm t with J t = -delta. Throws BalancingError when J is not of
/// full row rank, the residual exceeds zero_tol, or ||t||_inf >= 1.
BalancingSolution solve_balancing(const Eigen::MatrixXd& J, const Eigen::VectorXd& delta, const ToleranceSpec& tol);

/// Jacobian and balancing defect of an existence regime (or of the
/// alternative regime when `use_alternative`), then solve_balancing.
BalancingSolution balance(const OrbifoldConfig& config, const Verdict& verdict, bool use_alternative = false);

/// Per-point lambda(eps) in input order.
std::vector<std::pair<std::string, double>> lambda_schedule(const Verdict& verdict, const BalancingSolution& t,
                                                            double epsilon, bool use_alternative = false);

}  // namespace ale
