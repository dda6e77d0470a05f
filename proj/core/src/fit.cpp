#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ale/errors.hpp"
#include "ale/radial.hpp"

namespace ale {

AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, double>>& samples, int m,
                              const FitOptions& options) {
  if (m < 2) throw PreconditionError("fit_asymptotics needs m >= 2");

  std::vector<std::pair<double, double>> used;
  for (const auto& s : samples) {
    if (!(s.first > 0.0) || !std::isfinite(s.first) || !std::isfinite(s.second)) {
      throw PreconditionError("fit samples need finite t > 0 and finite f");
    }
    if (s.first >= options.t_fit_min) used.push_back(s);
  }
  if (used.size() < 3) throw PreconditionError("fit_asymptotics needs at least 3 samples above t_fit_min");
  std::sort(used.begin(), used.end());
  for (std::size_t i = 1; i < used.size(); ++i) {
    if (used[i].first == used[i - 1].first) throw PreconditionError("fit sample t values must be distinct");
  }

  // For m > 2 the mass column is fitted as t^{2-m}: (1 - t^{2-m})/(2-m) is
  // nearly parallel to the constant column at large t.
  const auto n = static_cast<Eigen::Index>(used.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = used[static_cast<std::size_t>(i)].first;
    design(i, 0) = m == 2 ? -std::log(t) : std::pow(t, 2 - m);
    design(i, 1) = std::pow(t, 1 - m);
    design(i, 2) = 1.0;
    rhs(i) = used[static_cast<std::size_t>(i)].second - 0.25 * t;
  }

  // Sample roundoff is relative to |f|, so rows are weighted by 1/max(|f|, 1);
  // columns are then equilibrated so the rank test is scale free.
  Eigen::VectorXd weight(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    weight(i) = 1.0 / std::max(std::abs(used[static_cast<std::size_t>(i)].second), 1.0);
  }
  const Eigen::MatrixXd weighted = weight.asDiagonal() * design;
  Eigen::Vector3d scale;
  for (int j = 0; j < 3; ++j) {
    scale(j) = weighted.col(j).norm();
    if (!(scale(j) > 0.0)) throw FitError("fit basis column vanishes on the samples");
  }
  const Eigen::MatrixXd scaled = weighted * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (!(sigma(2) > options.rank_tol * sigma(0))) {
    throw FitError("fit design matrix is rank deficient (samples too clustered)");
  }
  const Eigen::Vector3d coeff = svd.solve(weight.asDiagonal() * rhs).cwiseQuotient(scale);
  const Eigen::VectorXd residual = design * coeff - rhs;

  AsymptoticFit fit;
  fit.e_hat = m == 2 ? coeff(0) : (m - 2) * coeff(0);
  fit.c_hat = coeff(1);
  fit.const_hat = m == 2 ? coeff(2) : coeff(2) + coeff(0);
  fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  fit.samples_used = static_cast<int>(n);
  return fit;
}

}  // namespace ale
