#pragma once

#include <utility>
#include <vector>

#include "ale/invariants.hpp"
#include "ale/profile.hpp"
#include "ale/quadrature.hpp"

namespace ale {

/// Value of a quadrature or of an extrapolated limit, with its error estimate
/// and the R schedule it was computed on (empty for single integrals).
struct IntegralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<double> schedule;
  std::vector<double> sequence;
};

/// Determinant of the radial metric relative to (dd^c t)^m:
/// V(t) = f'^{m-1} (f' + t f'').  Throws PositivityError if V <= 0.
double volume_density(const RadialProfile& profile, double t);

/// Pointwise scalar curvature of dd^c f(|z|^2), with rho = -dd^c log V and
/// s eta^m = m rho ^ eta^{m-1}.
double scalar_curvature(const RadialProfile& profile, double t);

/// Checks f' > 0 and f' + t f'' > 0 on a 256-point log grid over [lo, hi].
/// Throws PositivityError naming the first offending t.
void screen_positivity(const RadialProfile& profile, double lo, double hi);

/// Volume of pi^{-1}(B(R)/Gamma); an annulus (t_min, R^2) for tail-only profiles.
IntegralEstimate ball_volume(const RadialProfile& profile, double R, const QuadratureSpec& quad);

/// Total scalar curvature over the same region as ball_volume.
IntegralEstimate total_scalar_ball(const RadialProfile& profile, double R, const QuadratureSpec& quad);

/// Volume of the ball minus the flat leading term pi^m R^{2m} / (m! |Gamma|),
/// integrated without cancellation against that term.
IntegralEstimate excess_ball_volume(const RadialProfile& profile, double R, const QuadratureSpec& quad);

/// Integral of d^c|z|^2 ^ (dd^c|z|^2)^{m-1} over the sphere of radius R: (4 pi)^m R^{2m}.
double sphere_integral(int m, double R);

/// Large-R volume of a ball: leading terms through order R^{4-2m} plus int xi^m/m!.
double predicted_ball_volume(const ALEModelInvariants& inv, double R);

/// Total scalar curvature of the model: rho_xi + 16 pi^m e / ((m-2)! |Gamma|).
double predicted_total_scalar(const ALEModelInvariants& inv);

/// Least-squares fit of f(t) - t/4 against {(1 - t^{2-m})/(2-m), t^{1-m}, 1}
/// (for m = 2 the first basis function is -log t).
struct AsymptoticFit {
  double e_hat = 0.0;
  double c_hat = 0.0;
  double const_hat = 0.0;
  double rms_residual = 0.0;
  int samples_used = 0;
};

struct FitOptions {
  double t_fit_min = 0.0;
  /// Singular values below rank_tol * sigma_max (after column equilibration)
  /// make the fit rank deficient.
  double rank_tol = 1e-10;
};

AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, double>>& samples, int m,
                              const FitOptions& options = {});

/// First basis function (1 - t^{2-m})/(2-m), with the m = 2 case -log t.
double mass_basis(int m, double t);

/// Estimate of int xi^m/m! from the volume growth of balls, extrapolating
///   4 pi^m c/((m-2)! |Gamma|) + vol(B(R)) - pi^m/(m! |Gamma|)(R^{2m} - 4 m e R^2 + 8 m (m-1) e^2 R^{4-2m})
/// along an increasing R schedule.
IntegralEstimate xi_integral_from_volume(const RadialProfile& profile, const Asymptotics& partial,
                                         const std::vector<double>& R_schedule, const QuadratureSpec& quad);

/// Limit of total_scalar_ball as R -> inf along an increasing schedule.
IntegralEstimate total_scalar_limit(const RadialProfile& profile, const std::vector<double>& R_schedule,
                                    const QuadratureSpec& quad);

/// Extrapolates a sequence sampled on an increasing schedule, assuming
/// power-law convergence. Throws ConvergenceError if successive differences
/// stop shrinking. `noise` is an absolute floor below which differences are
/// treated as converged.
IntegralEstimate extrapolate_limit(const std::vector<double>& schedule, const std::vector<double>& sequence,
                                   double noise);

/// Geometric schedule from `first` to `last` with `count` points.
std::vector<double> geometric_schedule(double first, double last, int count);

}  // namespace ale
