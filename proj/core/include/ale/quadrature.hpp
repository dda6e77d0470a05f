#pragma once

#include <functional>

namespace ale {

/// Stopping rule for adaptive quadrature: accept once the error estimate is
/// below max(abs_tol, rel_tol * L1 norm of the integrand).
struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_subdivisions = 4096;

  void validate() const;
  QuadratureSpec tightened(double factor) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;
};

/// Adaptive Gauss-Kronrod (15/31) integration of `f` over [a, b].
/// Throws QuadratureError when the subdivision budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

}  // namespace ale
