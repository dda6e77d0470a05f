#include "ale/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ale/errors.hpp"

namespace ale {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

/// 4^m pi^m / ((m-1)! |Gamma|): converts int V(t) t^{m-1} dt into a volume.
double radial_measure(int m, int gamma) {
  return std::pow(4.0 * kPi, m) / (factorial(m - 1) * gamma);
}

struct CurvatureTerms {
  double s = 0.0;
  double magnitude = 0.0;  // size of the terms before cancellation
  bool resolved = true;
};

// f' + t f'' lost to cancellation: near a collapsing divisor both terms blow
// up and the difference is roundoff.
bool unresolved(double f1, double tf2, double w) {
  return std::abs(w) <= 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(f1) + std::abs(tf2));
}

CurvatureTerms curvature_terms(const RadialProfile& profile, double t) {
  const int m = profile.dimension();
  const Jet j = profile.jet(t);
  const double f1 = j[1], f2 = j[2], f3 = j[3], f4 = j[4];
  const auto exact = profile.moment_jet(t);
  const double w = exact ? (*exact)[0] : f1 + t * f2;
  if (!exact && f1 > 0.0 && unresolved(f1, t * f2, w)) {
    CurvatureTerms out;
    out.resolved = false;
    return out;
  }
  if (!(f1 > 0.0) || !(w > 0.0)) {
    throw PositivityError("degenerate radial metric in scalar curvature", t);
  }
  const double w1 = exact ? (*exact)[1] : 2.0 * f2 + t * f3;
  const double w2 = exact ? (*exact)[2] : 3.0 * f3 + t * f4;
  const double r1 = f2 / f1;
  const double q1 = w1 / w;

  // L = log V = (m-1) log f' + log(f' + t f'').
  const double dL = (m - 1) * r1 + q1;
  const double ddL = (m - 1) * (f3 / f1 - r1 * r1) + w2 / w - q1 * q1;

  // Divided through by f'^{m-1}, so the denominator is f' + t f'' only.
  const double s = -(m * dL + t * ((m - 1) * dL * r1 + ddL)) / w;

  const double mag_dL = (m - 1) * std::abs(r1) + std::abs(q1);
  const double mag_ddL = (m - 1) * (std::abs(f3 / f1) + r1 * r1) + std::abs(w2 / w) + q1 * q1;
  const double magnitude = (m * mag_dL + t * ((m - 1) * mag_dL * std::abs(r1) + mag_ddL)) / w;
  // Near t = 0 the individual terms overflow even when w is exact.
  if (!std::isfinite(s) || !std::isfinite(magnitude)) {
    CurvatureTerms out;
    out.resolved = false;
    return out;
  }
  return {s, magnitude, true};
}

double screen_floor(const RadialProfile& profile, double hi) {
  const double t_min = profile.t_min();
  if (t_min > 0.0) return t_min * (1.0 + 1e-9) + 1e-300;
  return std::min(1e-6, hi * 1e-6);
}

void check_radius(const RadialProfile& profile, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("radius must be positive and finite");
  const double t = R * R;
  if (!(t > profile.t_min())) throw DomainError("R^2 must exceed the profile's t_min");
  if (t > profile.t_max()) throw DomainError("R^2 exceeds the sampled range of the profile");
}

}  // namespace

double volume_density(const RadialProfile& profile, double t) {
  const Jet j = profile.jet(t);
  const double f1 = j[1];
  const auto exact = profile.moment_jet(t);
  const double w = exact ? (*exact)[0] : f1 + t * j[2];
  const double v = std::pow(f1, profile.dimension() - 1) * w;
  if (!(f1 > 0.0) || !(w > 0.0) || !(v > 0.0)) {
    throw PositivityError("radial metric is not positive", t);
  }
  return v;
}

double scalar_curvature(const RadialProfile& profile, double t) {
  const CurvatureTerms c = curvature_terms(profile, t);
  if (!c.resolved) throw DomainError("scalar curvature is not resolvable in double precision at this t");
  return c.s;
}

void screen_positivity(const RadialProfile& profile, double lo, double hi) {
  constexpr int kGrid = 256;
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("positivity screen needs 0 < lo <= hi");
  const double step = (kGrid > 1 && hi > lo) ? std::log(hi / lo) / (kGrid - 1) : 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double t = (i == kGrid - 1) ? hi : lo * std::exp(step * i);
    const Jet j = profile.jet(t);
    if (!(j[1] > 0.0)) throw PositivityError("f' is not positive", t);
    if (!(j[1] + t * j[2] > 0.0)) throw PositivityError("f' + t f'' is not positive", t);
  }
}

IntegralEstimate ball_volume(const RadialProfile& profile, double R, const QuadratureSpec& quad) {
  check_radius(profile, R);
  const double hi = R * R;
  screen_positivity(profile, screen_floor(profile, hi), hi);
  const int m = profile.dimension();
  const double k = radial_measure(m, profile.group_order());
  auto integrand = [&](double t) { return volume_density(profile, t) * std::pow(t, m - 1); };
  QuadratureSpec scaled = quad;
  scaled.abs_tol = quad.abs_tol / k;
  const QuadratureResult r = integrate(integrand, profile.t_min(), hi, scaled);
  return IntegralEstimate{k * r.value, k * r.error_estimate, {}, {}};
}

IntegralEstimate excess_ball_volume(const RadialProfile& profile, double R, const QuadratureSpec& quad) {
  check_radius(profile, R);
  const double hi = R * R;
  screen_positivity(profile, screen_floor(profile, hi), hi);
  const int m = profile.dimension();
  const double k = radial_measure(m, profile.group_order());
  const double flat_density = std::pow(0.25, m);
  auto integrand = [&](double t) { return (volume_density(profile, t) - flat_density) * std::pow(t, m - 1); };
  // V - 4^{-m} is never resolved below roundoff of V itself, so the absolute
  // tolerance is floored at that level over the whole ball.
  const double eps = std::numeric_limits<double>::epsilon();
  const double flat_integral = flat_density * std::pow(hi, m) / m;
  QuadratureSpec scaled = quad;
  scaled.abs_tol = std::max(quad.abs_tol / k, 64.0 * eps * flat_integral);
  const QuadratureResult r = integrate(integrand, profile.t_min(), hi, scaled);
  // The flat term over [0, t_min] is missing from an annulus. The error
  // carries the roundoff of V over the whole ball, which the quadrature
  // estimate cannot see.
  const double inner_flat = flat_density * std::pow(profile.t_min(), m) / m;
  return IntegralEstimate{k * (r.value - inner_flat), k * (r.error_estimate + 4.0 * eps * (r.l1_norm + flat_integral)),
                          {}, {}};
}

IntegralEstimate total_scalar_ball(const RadialProfile& profile, double R, const QuadratureSpec& quad) {
  check_radius(profile, R);
  const double hi = R * R;
  screen_positivity(profile, screen_floor(profile, hi), hi);
  const int m = profile.dimension();
  const double k = radial_measure(m, profile.group_order());

  // Relative accuracy is measured against the curvature terms before they
  // cancel; for scalar-flat profiles the integrand is pure roundoff.
  // Unresolved points contribute nothing; the positivity screen has already
  // ruled out a genuine degeneration.
  auto magnitude = [&](double t) {
    const CurvatureTerms c = curvature_terms(profile, t);
    return c.resolved ? c.magnitude * volume_density(profile, t) * std::pow(t, m - 1) : 0.0;
  };
  QuadratureSpec loose = quad;
  loose.rel_tol = 1e-3;
  loose.abs_tol = std::numeric_limits<double>::min();
  double scale = 0.0;
  try {
    scale = integrate(magnitude, profile.t_min(), hi, loose).value;
  } catch (const QuadratureError& e) {
    scale = e.value();
  }

  auto integrand = [&](double t) {
    const CurvatureTerms c = curvature_terms(profile, t);
    return c.resolved ? c.s * volume_density(profile, t) * std::pow(t, m - 1) : 0.0;
  };
  QuadratureSpec scaled = quad;
  scaled.abs_tol = std::max(quad.abs_tol / k, quad.rel_tol * scale);
  const QuadratureResult r = integrate(integrand, profile.t_min(), hi, scaled);
  const double eps = std::numeric_limits<double>::epsilon();
  return IntegralEstimate{k * r.value, k * (r.error_estimate + 16.0 * eps * scale), {}, {}};
}

double sphere_integral(int m, double R) {
  if (m < 1) throw DomainError("sphere_integral needs m >= 1");
  if (!(R >= 0.0)) throw DomainError("sphere_integral needs R >= 0");
  return std::pow(4.0 * kPi, m) * std::pow(R, 2 * m);
}

double predicted_ball_volume(const ALEModelInvariants& inv, double R) {
  if (!(R > 0.0)) throw DomainError("predicted_ball_volume needs R > 0");
  const int m = inv.m;
  const double g = inv.gamma;
  const double pm = std::pow(kPi, m);
  return pm / (factorial(m) * g) * std::pow(R, 2 * m)                                        //
         - 4.0 * pm * inv.e / (factorial(m - 1) * g) * R * R                                 //
         - 4.0 * pm * (inv.c - 2.0 * inv.e * inv.e * std::pow(R, 4 - 2 * m)) / (factorial(m - 2) * g)  //
         + inv.xi_m;
}

double predicted_total_scalar(const ALEModelInvariants& inv) {
  return inv.rho_xi + 16.0 * std::pow(kPi, inv.m) * inv.e / (factorial(inv.m - 2) * inv.gamma);
}

double mass_basis(int m, double t) {
  if (m == 2) return -std::log(t);
  return (1.0 - std::pow(t, 2 - m)) / (2 - m);
}

IntegralEstimate xi_integral_from_volume(const RadialProfile& profile, const Asymptotics& partial,
                                         const std::vector<double>& R_schedule, const QuadratureSpec& quad) {
  if (R_schedule.size() < 3) throw PreconditionError("xi extraction needs an R schedule of length >= 3");
  if (!std::is_sorted(R_schedule.begin(), R_schedule.end()) ||
      std::adjacent_find(R_schedule.begin(), R_schedule.end()) != R_schedule.end()) {
    throw PreconditionError("R schedule must be strictly increasing");
  }
  const int m = profile.dimension();
  const double g = profile.group_order();
  const double pm = std::pow(kPi, m);
  const double e = partial.e;
  const double c = partial.c;
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> sequence;
  double noise = 0.0;
  for (double R : R_schedule) {
    const IntegralEstimate excess = excess_ball_volume(profile, R, quad);
    const double r2 = R * R;
    const double correction =
        pm / (factorial(m) * g) * (4.0 * m * e * r2 - 8.0 * m * (m - 1) * e * e * std::pow(r2, 2 - m));
    const double c_term = 4.0 * pm * c / (factorial(m - 2) * g);
    sequence.push_back(excess.value + correction + c_term);
    noise = std::max(noise, excess.error_estimate + 8.0 * eps * (std::abs(excess.value) + std::abs(correction)));
  }
  IntegralEstimate out = extrapolate_limit(R_schedule, sequence, noise);
  return out;
}

IntegralEstimate total_scalar_limit(const RadialProfile& profile, const std::vector<double>& R_schedule,
                                    const QuadratureSpec& quad) {
  if (R_schedule.size() < 3) throw PreconditionError("limit extraction needs an R schedule of length >= 3");
  std::vector<double> sequence;
  double noise = 0.0;
  for (double R : R_schedule) {
    const IntegralEstimate s = total_scalar_ball(profile, R, quad);
    sequence.push_back(s.value);
    noise = std::max(noise, s.error_estimate);
  }
  return extrapolate_limit(R_schedule, sequence, noise);
}

IntegralEstimate extrapolate_limit(const std::vector<double>& schedule, const std::vector<double>& sequence,
                                   double noise) {
  const std::size_t n = sequence.size();
  if (n < 3 || schedule.size() != n) throw PreconditionError("extrapolation needs >= 3 matched samples");
  noise = std::max(noise, 0.0);

  // Successive spreads must shrink (up to the noise floor).
  std::vector<double> diffs(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) diffs[i] = sequence[i + 1] - sequence[i];
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (std::abs(diffs[i]) > 2.0 * noise && std::abs(diffs[i]) > std::abs(diffs[i - 1]) + 2.0 * noise) {
      throw ConvergenceError("sequence spread is not decreasing along the R schedule");
    }
  }

  const double x3 = sequence[n - 1];
  const double d1 = diffs[n - 3];
  const double d2 = diffs[n - 2];
  double limit = x3;
  if (std::abs(d2) > 2.0 * noise && std::abs(d2 - d1) > 0.0 && d1 * d2 > 0.0) {
    // Aitken delta-squared on the last three terms.
    limit = x3 - d2 * d2 / (d2 - d1);
  }
  const double spread = std::abs(limit - x3);
  return IntegralEstimate{limit, spread + noise, schedule, sequence};
}

std::vector<double> geometric_schedule(double first, double last, int count) {
  if (count < 2 || !(first > 0.0) || !(last > first)) {
    throw PreconditionError("geometric schedule needs count >= 2 and 0 < first < last");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(last / first) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = first * std::exp(ratio * i);
  out.back() = last;
  return out;
}

}  // namespace ale
