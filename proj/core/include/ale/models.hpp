#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ale/invariants.hpp"
#include "ale/profile.hpp"
#include "ale/quadrature.hpp"
#include "ale/radial.hpp"

namespace ale {

enum class ModelKind { Flat, EguchiHanson, Burns, SyntheticTail, CustomInvariants };

std::string to_string(ModelKind kind);
/// Accepts "flat", "eguchi-hanson", "burns", "synthetic-tail", "custom".
ModelKind parse_model_kind(const std::string& name);

/// One local model from the catalog.
///
///   Flat(m, gamma)          f = t/4
///   EguchiHanson(a)         f' = sqrt(t^2 + a^4) / (4t),   m = 2, |Gamma| = 2
///   Burns(a)                f = t/4 + a log t,             m = 2, |Gamma| = 1
///   SyntheticTail(m, gamma, e, c, t_min)
///                           f = t/4 + e (1 - t^{2-m})/(2-m) + c t^{1-m} on (t_min, inf)
///   CustomInvariants        invariant package only, no potential
class ALEModel {
 public:
  static ALEModel flat(int m, int gamma);
  static ALEModel eguchi_hanson(double a);
  static ALEModel burns(double a);
  static ALEModel synthetic_tail(int m, int gamma, double e, double c, double t_min);
  static ALEModel custom(const ALEModelInvariants& inv);

  ModelKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return m_; }
  int group_order() const noexcept { return gamma_; }
  double scale() const noexcept { return a_; }
  const Asymptotics& tail() const noexcept { return tail_; }
  double t_min() const noexcept { return t_min_; }
  const std::optional<ALEModelInvariants>& custom_invariants() const noexcept { return custom_; }

  /// Orbifold points need a non-trivial group.
  bool orbifold_eligible() const noexcept { return gamma_ >= 2; }
  bool has_profile() const noexcept { return kind_ != ModelKind::CustomInvariants; }

  /// Short label, e.g. "eguchi-hanson(a=1)".
  std::string label() const;

 private:
  ALEModel() = default;

  ModelKind kind_ = ModelKind::Flat;
  int m_ = 2;
  int gamma_ = 1;
  double a_ = 0.0;
  Asymptotics tail_{};
  double t_min_ = 0.0;
  std::optional<ALEModelInvariants> custom_;
};

/// Closed-form potential of a catalog model. Throws PreconditionError for
/// CustomInvariants.
RadialProfile profile_of(const ALEModel& model);

/// Invariant package: closed forms for Flat, EguchiHanson and Burns; the
/// tail's own boundary terms for SyntheticTail; the stored package for
/// CustomInvariants. `quad` is used only where quadrature is needed.
ALEModelInvariants invariants(const ALEModel& model, const QuadratureSpec& quad = {});

/// Settings of the numerical extraction pipeline.
struct ExtractionPlan {
  std::vector<double> fit_t{};          // sample abscissae for fit_asymptotics
  std::vector<double> R_schedule{};     // radii for the xi and scalar limits
  QuadratureSpec quad{};
};

/// Fit on t in [1e3, 1e6]; radii stop where roundoff in V - 4^{-m}, integrated
/// over the ball (about eps R^{2m}), would swamp the remainder.
ExtractionPlan default_extraction_plan(int m = 2);

/// Invariants recovered from the potential alone: (e, c) by least squares on
/// the tail, xi_m from the volume growth of balls, rho_xi from the total
/// scalar curvature minus the mass term.
struct ExtractedInvariants {
  ALEModelInvariants inv;
  AsymptoticFit fit;
  IntegralEstimate xi;
  IntegralEstimate total_scalar;
};

ExtractedInvariants extract_invariants(const RadialProfile& profile, const ExtractionPlan& plan);

/// The built-in catalog at unit scale (Flat m = 2, EguchiHanson(1), Burns(1)).
std::vector<ALEModel> catalog();

}  // namespace ale
