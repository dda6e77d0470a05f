#include "ale/profile.hpp"

#include <boost/math/interpolators/barycentric_rational.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ale/errors.hpp"

namespace ale {

namespace {

void check_header(int m, int gamma, double t_min) {
  if (m < 2) throw PreconditionError("profile dimension m must be >= 2");
  if (gamma < 1) throw PreconditionError("profile group order must be >= 1");
  if (!(t_min >= 0.0) || !std::isfinite(t_min)) throw PreconditionError("profile t_min must be finite and >= 0");
}

}  // namespace

RadialProfile::RadialProfile(int m, int gamma, double t_min, Evaluator jet,
                             std::optional<Asymptotics> asymptotics)
    : RadialProfile(m, gamma, t_min, std::numeric_limits<double>::infinity(), std::move(jet), asymptotics) {}

RadialProfile::RadialProfile(int m, int gamma, double t_min, double t_max, Evaluator jet,
                             std::optional<Asymptotics> asymptotics)
    : m_(m), gamma_(gamma), t_min_(t_min), t_max_(t_max), jet_(std::move(jet)), asymptotics_(asymptotics) {
  check_header(m, gamma, t_min);
  if (!(t_max > t_min)) throw PreconditionError("profile t_max must exceed t_min");
  if (!jet_) throw PreconditionError("profile evaluator is empty");
}

Jet RadialProfile::jet(double t) const {
  if (!(t > t_min_) || !(t <= t_max_)) {
    throw DomainError("t = " + std::to_string(t) + " outside the profile domain (" + std::to_string(t_min_) +
                      ", " + std::to_string(t_max_) + "]");
  }
  return jet_(t);
}

RadialProfile RadialProfile::with_moment_jet(std::function<MomentJet(double)> w) const {
  if (!w) throw PreconditionError("moment evaluator is empty");
  RadialProfile out = *this;
  out.moment_ = std::move(w);
  return out;
}

std::optional<MomentJet> RadialProfile::moment_jet(double t) const {
  if (!moment_) return std::nullopt;
  jet(t);  // domain check
  return moment_(t);
}

double RadialProfile::derivative(int order, double t) const {
  if (order < 0 || order > 4) throw DomainError("derivative order must be in [0, 4]");
  return jet(t)[static_cast<std::size_t>(order)];
}

Jet finite_difference_jet(const std::function<double(double)>& f, double t, double lower_bound) {
  // First and second derivatives use h = max(1e-5 t, 1e-8); the third and
  // fourth use wider steps (roundoff grows like eps/h^k).
  const double scale = std::max(std::abs(t), 1e-3);
  double h12 = std::max(std::abs(t) * 1e-5, 1e-8);
  double h34 = scale * 2e-3;
  const double room = (t - lower_bound) / 2.5;
  h12 = std::min(h12, room);
  h34 = std::min(h34, room);
  if (!(h12 > 0.0)) throw DomainError("finite-difference stencil leaves the domain");

  const double f0 = f(t);
  Jet out{};
  out[0] = f0;
  {
    const double fp = f(t + h12);
    const double fm = f(t - h12);
    out[1] = (fp - fm) / (2.0 * h12);
    out[2] = (fp - 2.0 * f0 + fm) / (h12 * h12);
  }
  {
    const double h = h34;
    const double p1 = f(t + h), m1 = f(t - h);
    const double p2 = f(t + 2.0 * h), m2 = f(t - 2.0 * h);
    out[3] = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
    out[4] = (p2 - 4.0 * p1 + 6.0 * f0 - 4.0 * m1 + m2) / (h * h * h * h);
  }
  return out;
}

RadialProfile RadialProfile::from_function(int m, int gamma, double t_min, std::function<double(double)> f,
                                           std::optional<Asymptotics> asymptotics) {
  if (!f) throw PreconditionError("profile function is empty");
  auto eval = [f = std::move(f), t_min](double t) { return finite_difference_jet(f, t, t_min); };
  return RadialProfile(m, gamma, t_min, std::move(eval), asymptotics);
}

RadialProfile RadialProfile::from_samples(int m, int gamma, const std::vector<std::pair<double, double>>& samples,
                                          std::optional<Asymptotics> asymptotics) {
  if (samples.size() < 4) throw PreconditionError("a sampled profile needs at least 4 samples");
  std::vector<std::pair<double, double>> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> u;
  std::vector<double> g;
  u.reserve(sorted.size());
  g.reserve(sorted.size());
  for (const auto& [t, f] : sorted) {
    if (!(t > 0.0) || !std::isfinite(f)) throw PreconditionError("samples need t > 0 and finite f");
    if (!u.empty() && std::log(t) <= u.back()) throw PreconditionError("sample t values must be distinct");
    u.push_back(std::log(t));
    g.push_back(f - 0.25 * t);
  }
  const double t_lo = sorted.front().first;
  const double t_hi = sorted.back().first;
  auto interp = std::make_shared<boost::math::barycentric_rational<double>>(u.begin(), u.end(), g.begin(), 3);
  auto f = [interp](double t) { return 0.25 * t + (*interp)(std::log(t)); };
  auto eval = [f, t_lo](double t) { return finite_difference_jet(f, t, t_lo); };
  return RadialProfile(m, gamma, t_lo, t_hi, std::move(eval), asymptotics);
}

}  // namespace ale
