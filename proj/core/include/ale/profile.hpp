#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace ale {

/// Declared large-t behaviour f(t) ~ t/4 + e(1 - t^{2-m})/(2-m) + c t^{1-m} + const.
struct Asymptotics {
  double e = 0.0;
  double c = 0.0;
};

/// f and its first four derivatives at one point, index k holds f^{(k)}(t).
using Jet = std::array<double, 5>;

/// w = (t f')' = f' + t f'' and its first two derivatives.
using MomentJet = std::array<double, 3>;

/// A U(m)-invariant Kähler potential f(t), t = |z|^2, on (t_min, t_max].
/// Analytic profiles have t_max = inf.
///
/// Immutable; copies share the underlying evaluator.
class RadialProfile {
 public:
  using Evaluator = std::function<Jet(double)>;

  RadialProfile(int m, int gamma, double t_min, Evaluator jet,
                std::optional<Asymptotics> asymptotics = std::nullopt);
  RadialProfile(int m, int gamma, double t_min, double t_max, Evaluator jet,
                std::optional<Asymptotics> asymptotics = std::nullopt);

  /// Profile known only through f; derivatives by central differences with
  /// step h = max(1e-5 t, 1e-8).
  static RadialProfile from_function(int m, int gamma, double t_min, std::function<double(double)> f,
                                     std::optional<Asymptotics> asymptotics = std::nullopt);

  /// Profile interpolated from (t, f) samples: the deviation f - t/4 is
  /// interpolated in log t. Domain is (first sample, last sample].
  static RadialProfile from_samples(int m, int gamma, const std::vector<std::pair<double, double>>& samples,
                                    std::optional<Asymptotics> asymptotics = std::nullopt);

  int dimension() const noexcept { return m_; }
  int group_order() const noexcept { return gamma_; }
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  const std::optional<Asymptotics>& asymptotics() const noexcept { return asymptotics_; }

  /// Throws DomainError outside (t_min, t_max].
  Jet jet(double t) const;
  double value(double t) const { return jet(t)[0]; }
  double derivative(int order, double t) const;

  /// Copy that takes w from a closed form instead of f' + t f'', which
  /// cancels where f' blows up (near an exceptional divisor).
  RadialProfile with_moment_jet(std::function<MomentJet(double)> w) const;
  /// Closed-form w jet when one was supplied.
  std::optional<MomentJet> moment_jet(double t) const;

 private:
  int m_;
  int gamma_;
  double t_min_;
  double t_max_;
  Evaluator jet_;
  std::function<MomentJet(double)> moment_;
  std::optional<Asymptotics> asymptotics_;
};

/// Central-difference jet of a scalar function, shared by sampled profiles
/// and by derivative cross-checks.
/// Stencil points stay above `lower_bound`.
Jet finite_difference_jet(const std::function<double(double)>& f, double t,
                          double lower_bound = -std::numeric_limits<double>::infinity());

}  // namespace ale
