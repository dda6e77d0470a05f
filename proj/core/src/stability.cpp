#include "ale/stability.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "ale/errors.hpp"

namespace ale {

namespace {

struct SumCheck {
  Eigen::VectorXd sum;
  double norm = 0.0;
  double scale = 0.0;
  bool vanishes = true;
};

// Sum of the columns listed, with the vanishing test relative to the column norms.
SumCheck check_sum(const Eigen::MatrixXd& columns, const std::vector<std::size_t>& which, double zero_tol) {
  SumCheck out;
  out.sum = Eigen::VectorXd::Zero(columns.rows());
  for (std::size_t j : which) {
    const auto col = columns.col(static_cast<Eigen::Index>(j));
    out.sum += col;
    out.scale += col.norm();
  }
  out.norm = out.sum.norm();
  out.vanishes = out.norm <= zero_tol * out.scale;
  return out;
}

std::vector<Eigen::VectorXd> gather(const std::vector<Eigen::VectorXd>& vs, const std::vector<std::size_t>& which) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(which.size());
  for (std::size_t j : which) out.push_back(vs[j]);
  return out;
}

std::vector<Schedule> schedules_for(Regime regime, const OrbifoldConfig& config, const Partition& part) {
  const double m = config.m;
  std::vector<Schedule> out(config.points.size());
  for (std::size_t i = 0; i < config.points.size(); ++i) out[i].id = config.points[i].id;
  switch (regime) {
    case Regime::ExistenceAllZeroMass:
      for (auto& s : out) s.power = 1.0 / m;
      break;
    case Regime::ExistenceSomeNonzeroMass:
      // Points outside Q stay at factor eps and do not take part in balancing.
      for (std::size_t q : part.Q) out[q].power = 1.0 / (m - 1.0);
      break;
    case Regime::ExistenceMixedScales:
      for (std::size_t q : part.Q) out[q].power = 1.0 / (m - 1.0);
      for (std::size_t p : part.P) {
        out[p].exponent = (m - 1.0) / m;
        out[p].power = 1.0 / m;
      }
      break;
    default:
      return {};
  }
  return out;
}

Eigen::MatrixXd jacobian_columns(const OrbifoldConfig& config, const Partition& part, bool include_P) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(config.d, static_cast<Eigen::Index>(config.points.size()));
  for (std::size_t q : part.Q) {
    const auto& pt = config.points[q];
    J.col(static_cast<Eigen::Index>(q)) = (pt.inv.e / pt.gamma) * pt.mu;
  }
  if (include_P) {
    for (std::size_t p : part.P) {
      const auto& pt = config.points[p];
      J.col(static_cast<Eigen::Index>(p)) = pt.inv.a * weight(config, pt);
    }
  }
  return J;
}

void require_classifiable(const OrbifoldConfig& config, const ToleranceSpec& tol) {
  config.validate();
  tol.validate();
  const Eigen::VectorXd f0 = config.base_futaki_or_zero();
  if (f0.size() > 0 && f0.lpNorm<Eigen::Infinity>() > tol.zero_tol) {
    throw PreconditionError("classify needs a vanishing base Futaki invariant");
  }
  for (const auto& p : config.points) {
    if (!p.inv.scalar_flat) throw PreconditionError("point '" + p.id + "': model is not scalar flat");
  }
}

}  // namespace

void ToleranceSpec::validate() const {
  if (!(zero_tol > 0.0) || !std::isfinite(zero_tol)) throw PreconditionError("zero_tol must be positive and finite");
  if (!(rank_tol > 0.0) || !std::isfinite(rank_tol)) throw PreconditionError("rank_tol must be positive and finite");
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::NonExistenceEqualScale: return "NonExistenceEqualScale";
    case Regime::ExistenceSomeNonzeroMass: return "ExistenceSomeNonzeroMass";
    case Regime::ExistenceAllZeroMass: return "ExistenceAllZeroMass";
    case Regime::ExistenceMixedScales: return "ExistenceMixedScales";
    case Regime::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Regime parse_regime(const std::string& name) {
  for (Regime r : {Regime::NonExistenceEqualScale, Regime::ExistenceSomeNonzeroMass, Regime::ExistenceAllZeroMass,
                   Regime::ExistenceMixedScales, Regime::Inconclusive}) {
    if (to_string(r) == name) return r;
  }
  throw PreconditionError("unknown regime '" + name + "'");
}

bool is_existence(Regime regime) noexcept {
  return regime == Regime::ExistenceSomeNonzeroMass || regime == Regime::ExistenceAllZeroMass ||
         regime == Regime::ExistenceMixedScales;
}

Partition partition(const OrbifoldConfig& config, const ToleranceSpec& tol) {
  Partition part;
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    (std::abs(config.points[i].inv.e) > tol.zero_tol ? part.Q : part.P).push_back(i);
  }
  return part;
}

int span_rank(const std::vector<Eigen::VectorXd>& vectors, int d, const ToleranceSpec& tol) {
  tol.validate();
  if (d < 0) throw PreconditionError("span_rank needs d >= 0");
  for (const auto& v : vectors) {
    if (v.size() != d) throw DimensionError("span_rank: vector length differs from d");
  }
  if (vectors.empty() || d == 0) return 0;
  Eigen::MatrixXd A(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = vectors[j];
  const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
  if (!(sigma(0) > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > tol.rank_tol * sigma(0)) ++rank;
  }
  return rank;
}

Eigen::MatrixXd balancing_jacobian(const OrbifoldConfig& config, const Partition& part, bool include_P) {
  config.validate();
  const auto n = config.points.size();
  if (part.Q.size() + part.P.size() != n) throw DimensionError("partition does not cover the points");
  for (std::size_t i : part.Q) {
    if (i >= n) throw DimensionError("partition index out of range");
  }
  for (std::size_t i : part.P) {
    if (i >= n) throw DimensionError("partition index out of range");
  }
  return jacobian_columns(config, part, include_P);
}

Verdict classify(const OrbifoldConfig& config, const ToleranceSpec& tol) {
  require_classifiable(config, tol);
  const int d = config.d;
  const Partition part = partition(config, tol);

  Verdict v;
  v.tolerances = tol;
  v.witness.d = d;
  for (std::size_t q : part.Q) v.witness.Q.push_back(config.points[q].id);
  for (std::size_t p : part.P) v.witness.P.push_back(config.points[p].id);
  for (const auto& pt : config.points) {
    const double ae = std::abs(pt.inv.e);
    if (ae != 0.0 && ae >= 1e-2 * tol.zero_tol && ae <= 1e2 * tol.zero_tol) v.witness.borderline.push_back(pt.id);
  }

  const Eigen::MatrixXd J = jacobian_columns(config, part, true);
  std::vector<Eigen::VectorXd> mu, w;
  for (const auto& pt : config.points) {
    mu.push_back(pt.mu);
    w.push_back(weight(config, pt));
  }
  std::vector<std::size_t> all(config.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  const auto record = [&v](const SumCheck& s, int rank) {
    v.witness.sum_vector = s.sum;
    v.witness.sum_norm = s.norm;
    v.witness.sum_scale = s.scale;
    v.witness.rank = rank;
  };

  const bool has_Q = !part.Q.empty();
  const bool has_P = !part.P.empty();
  const SumCheck sum_Q = check_sum(J, part.Q, tol.zero_tol);
  const SumCheck sum_all = check_sum(J, all, tol.zero_tol);

  // Mixed scales: sum over Q and P together, span of mu(Q) and w(P).
  const auto mixed_rank = [&] {
    std::vector<Eigen::VectorXd> span = gather(mu, part.Q);
    for (std::size_t p : part.P) span.push_back(w[p]);
    return span_rank(span, d, tol);
  };
  const auto mixed_ok = [&] { return has_Q && has_P && sum_all.vanishes && mixed_rank() == d; };

  if (has_Q && !sum_Q.vanishes) {
    v.regime = Regime::NonExistenceEqualScale;
    v.equal_scale_obstructed = true;
    record(sum_Q, span_rank(gather(mu, part.Q), d, tol));
    if (mixed_ok()) {
      v.alternative = Regime::ExistenceMixedScales;
      v.alternative_schedules = schedules_for(Regime::ExistenceMixedScales, config, part);
    }
    return v;
  }
  if (!has_Q && !sum_all.vanishes) {
    v.regime = Regime::NonExistenceEqualScale;
    v.equal_scale_obstructed = true;
    record(sum_all, span_rank(w, d, tol));
    return v;
  }
  if (has_Q) {
    const int rank = span_rank(gather(mu, part.Q), d, tol);
    if (rank == d) {
      v.regime = Regime::ExistenceSomeNonzeroMass;
      record(sum_Q, rank);
      v.schedules = schedules_for(v.regime, config, part);
      return v;
    }
  } else {
    const int rank = span_rank(w, d, tol);
    record(sum_all, rank);
    if (rank == d) {
      v.regime = Regime::ExistenceAllZeroMass;
      v.schedules = schedules_for(v.regime, config, part);
      return v;
    }
    v.regime = Regime::Inconclusive;
    return v;
  }
  if (mixed_ok()) {
    v.regime = Regime::ExistenceMixedScales;
    record(sum_all, d);
    v.schedules = schedules_for(v.regime, config, part);
    return v;
  }
  v.regime = Regime::Inconclusive;
  record(sum_all, mixed_rank());
  return v;
}

BalancingSolution solve_balancing(const Eigen::MatrixXd& J, const Eigen::VectorXd& delta, const ToleranceSpec& tol) {
  tol.validate();
  if (delta.size() != J.rows()) throw DimensionError("solve_balancing: delta length differs from J rows");
  BalancingSolution out;
  out.t = Eigen::VectorXd::Zero(J.cols());
  if (J.rows() == 0) return out;
  if (J.cols() == 0) throw BalancingError(BalancingError::Reason::RankDeficient, "balancing Jacobian has no columns");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(0) > 0.0 && sigma(k) > tol.rank_tol * sigma(0)) ++rank;
  }
  out.jacobian_rank = rank;
  if (rank < J.rows()) {
    throw BalancingError(BalancingError::Reason::RankDeficient,
                         "balancing Jacobian has rank " + std::to_string(rank) + " < " + std::to_string(J.rows()));
  }
  // t = -V S^{-1} U^T delta, restricted to the retained singular directions.
  const Eigen::VectorXd coeff =
      (svd.matrixU().leftCols(rank).transpose() * delta).cwiseQuotient(sigma.head(rank));
  out.t = -(svd.matrixV().leftCols(rank) * coeff);
  out.residual = (J * out.t + delta).norm();
  if (out.residual > tol.zero_tol * (1.0 + delta.norm())) {
    throw BalancingError(BalancingError::Reason::Residual, "balancing residual exceeds zero_tol");
  }
  if (out.t.size() > 0 && out.t.lpNorm<Eigen::Infinity>() >= 1.0) {
    throw BalancingError(BalancingError::Reason::OutsideChart, "balancing step leaves the unit box");
  }
  return out;
}

BalancingSolution balance(const OrbifoldConfig& config, const Verdict& verdict, bool use_alternative) {
  const Regime regime = use_alternative ? verdict.alternative.value_or(Regime::Inconclusive) : verdict.regime;
  if (!is_existence(regime)) throw PreconditionError("balancing needs an existence regime");
  const Partition part = partition(config, verdict.tolerances);
  const Eigen::MatrixXd J = balancing_jacobian(config, part, regime != Regime::ExistenceSomeNonzeroMass);
  // F(t) = sum_p (1 + t_p) J_p, so the defect at t = 0 is J applied to ones.
  const Eigen::VectorXd delta = J * Eigen::VectorXd::Ones(J.cols());
  return solve_balancing(J, delta, verdict.tolerances);
}

std::vector<std::pair<std::string, double>> lambda_schedule(const Verdict& verdict, const BalancingSolution& t,
                                                            double epsilon, bool use_alternative) {
  const Regime regime = use_alternative ? verdict.alternative.value_or(Regime::Inconclusive) : verdict.regime;
  if (!is_existence(regime)) throw PreconditionError("lambda_schedule needs an existence regime");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be positive");
  const auto& sched = use_alternative ? verdict.alternative_schedules : verdict.schedules;
  if (t.t.size() != static_cast<Eigen::Index>(sched.size())) {
    throw DimensionError("balancing solution length differs from the number of points");
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(sched.size());
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const auto& s = sched[i];
    const double tp = t.t(static_cast<Eigen::Index>(i));
    out.emplace_back(s.id, s.factor * std::pow(epsilon, s.exponent) * std::pow(1.0 + tp, s.power));
  }
  return out;
}

}  // namespace ale
