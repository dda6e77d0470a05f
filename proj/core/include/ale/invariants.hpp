#pragma once

namespace ale {

/// Cohomological and asymptotic package of one ALE local model.
///
///  - e, c:    coefficients of the potential's large-|z| expansion; e is the
///             ADM-mass coefficient.
///  - xi_m:    integral of xi^m / m! over the model.
///  - rho_xi:  integral of rho ^ xi^{m-1} / (m-1)!.
///  - a:       xi-integral in the normalization  int xi^m / (16 pi^m m (m-1)),
///             i.e. a = (m-2)! xi_m / (16 pi^m). Stored signed.
struct ALEModelInvariants {
  int m = 2;
  int gamma = 1;
  double e = 0.0;
  double c = 0.0;
  double xi_m = 0.0;
  double rho_xi = 0.0;
  double a = 0.0;
  bool scalar_flat = false;

  bool ricci_flat() const noexcept { return scalar_flat && e == 0.0 && rho_xi == 0.0; }
};

/// Residuals of the algebraic identities linking the stored numbers:
///   xi_m  = 16 pi^m a / (m-2)!
///   rho_xi = -16 pi^m e / ((m-2)! gamma)     when scalar flat
///   xi_m  = 4 pi^m c / ((m-2)! gamma)        when Ricci flat
/// Entries that do not apply are zero.
struct ConsistencyReport {
  double xi_vs_a = 0.0;
  double rho_vs_mass = 0.0;
  double xi_vs_c = 0.0;

  bool ok(double tol) const noexcept;
};

ConsistencyReport check_consistency(const ALEModelInvariants& inv);

/// (m-2)! / (16 pi^m): converts xi_m to a, and rho_xi to -e/gamma.
double mass_normalization(int m);

}  // namespace ale
