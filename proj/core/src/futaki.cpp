#include "ale/futaki.hpp"

#include <cmath>
#include <numbers>

#include "ale/errors.hpp"

namespace ale {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

void OrbifoldConfig::validate() const {
  if (m < 2) throw PreconditionError("orbifold dimension m must be >= 2");
  if (d < 0) throw PreconditionError("algebra dimension d must be >= 0");
  if (!std::isfinite(s_bar)) throw PreconditionError("s_bar must be finite");
  if (base_futaki.size() != 0 && base_futaki.size() != d) {
    throw DimensionError("base_futaki has length " + std::to_string(base_futaki.size()) + ", expected " +
                         std::to_string(d));
  }
  if (!all_finite(base_futaki)) throw PreconditionError("base_futaki must be finite");
  if (points.empty()) throw PreconditionError("configuration needs at least one singular point");
  for (const auto& p : points) {
    const std::string who = "point '" + p.id + "': ";
    if (p.gamma < 1) throw PreconditionError(who + "gamma must be >= 1");
    if (p.inv.gamma != p.gamma) throw PreconditionError(who + "model group order differs from gamma");
    if (p.inv.m != m) throw PreconditionError(who + "model dimension differs from m");
    if (p.mu.size() != d || p.lap_mu.size() != d) {
      throw DimensionError(who + "mu and laplacian_mu must have length " + std::to_string(d));
    }
    if (!all_finite(p.mu) || !all_finite(p.lap_mu)) throw PreconditionError(who + "non-finite moment data");
    const auto& inv = p.inv;
    if (!std::isfinite(inv.e) || !std::isfinite(inv.c) || !std::isfinite(inv.xi_m) || !std::isfinite(inv.rho_xi) ||
        !std::isfinite(inv.a)) {
      throw PreconditionError(who + "non-finite model invariants");
    }
  }
}

Eigen::VectorXd OrbifoldConfig::base_futaki_or_zero() const {
  if (base_futaki.size() == d) return base_futaki;
  return Eigen::VectorXd::Zero(d);
}

Eigen::VectorXd weight(const OrbifoldConfig& config, const SingularPointDatum& point) {
  return config.s_bar * point.mu + point.lap_mu;
}

FutakiExpansion expansion(const OrbifoldConfig& config) {
  config.validate();
  FutakiExpansion out;
  out.m = config.m;
  out.F0 = config.base_futaki_or_zero();
  out.C_lead = Eigen::VectorXd::Zero(config.d);
  out.C_next = Eigen::VectorXd::Zero(config.d);
  for (const auto& p : config.points) {
    out.C_lead += p.inv.rho_xi * p.mu;
    out.C_next -= p.inv.xi_m * weight(config, p);
  }
  return out;
}

ScalarFlatReduction scalar_flat_reduction(const OrbifoldConfig& config) {
  config.validate();
  ScalarFlatReduction out{Eigen::VectorXd::Zero(config.d), Eigen::VectorXd::Zero(config.d)};
  for (const auto& p : config.points) {
    if (!p.inv.scalar_flat) throw PreconditionError("point '" + p.id + "': model is not scalar flat");
    out.D1 += (p.inv.e / p.gamma) * p.mu;
    out.D2 += p.inv.a * weight(config, p);
  }
  return out;
}

double bridge_factor(int m) {
  if (m < 2) throw PreconditionError("bridge_factor needs m >= 2");
  double fact = 1.0;
  for (int k = 2; k <= m - 2; ++k) fact *= k;
  return 16.0 * std::pow(std::numbers::pi, m) / fact;
}

double evaluate(const FutakiExpansion& exp, double epsilon, const Eigen::VectorXd& v) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be positive");
  const auto d = exp.C_lead.size();
  if (v.size() != d || exp.F0.size() != d || exp.C_next.size() != d) {
    throw DimensionError("evaluate: vector length mismatch");
  }
  const double lead = std::pow(epsilon, exp.m - 1);
  return (exp.F0 + lead * exp.C_lead + lead * epsilon * exp.C_next).dot(v);
}

}  // namespace ale
