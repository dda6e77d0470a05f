#include "ale/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <vector>

#include "ale/errors.hpp"

namespace ale {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
  // The single-panel path reports its error on the reference interval [-1, 1]
  // while value and L1 are mapped to [a, b].
  error *= 0.5 * (b - a);
  return Panel{a, b, value, error, l1};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(std::isfinite(rel_tol) && rel_tol > 0.0) || !(std::isfinite(abs_tol) && abs_tol > 0.0)) {
    throw PreconditionError("quadrature tolerances must be finite and positive");
  }
  if (max_subdivisions <= 0) {
    throw PreconditionError("quadrature max_subdivisions must be positive");
  }
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.rel_tol /= factor;
  out.abs_tol /= factor;
  out.max_subdivisions *= 2;
  return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integration bounds must be finite");
  }
  if (a == b) {
    return {};
  }
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }

  // Global adaptive bisection: always split the panel with the largest
  // error estimate, keeping running totals exact by resumming at the end.
  std::priority_queue<Panel> panels;
  Panel first = evaluate_panel(f, a, b);
  double value = first.value;
  double error = first.error;
  double l1 = first.l1;
  panels.push(first);

  int subdivisions = 1;
  auto converged = [&] { return error <= std::max(spec.abs_tol, spec.rel_tol * l1); };

  while (!converged() && subdivisions < spec.max_subdivisions) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      panels.push(worst);
      break;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  value = 0.0;
  error = 0.0;
  l1 = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  // Resum from the best-resolved panels upward.
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    value += it->value;
    error += it->error;
    l1 += it->l1;
  }

  if (!std::isfinite(value)) {
    throw QuadratureError("integrand produced a non-finite value", value, error);
  }
  if (!converged()) {
    throw QuadratureError("adaptive quadrature exceeded its subdivision budget", value, error);
  }
  return QuadratureResult{value, error, l1};
}

}  // namespace ale
