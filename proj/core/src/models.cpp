#include "ale/models.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ale/errors.hpp"

namespace ale {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

// f = t/4 + e (1 - t^{2-m})/(2-m) + c t^{1-m}. With g = t^{1-m} the mass term
// has k-th derivative -g^{(k-1)}, which also covers m = 2 (-log t).
Jet tail_jet(int m, double e, double c, double t) {
  std::array<double, 5> g{};
  g[0] = std::pow(t, 1 - m);
  for (int k = 1; k <= 4; ++k) g[k] = g[k - 1] * (1 - m - (k - 1)) / t;
  Jet j{};
  j[0] = 0.25 * t + e * mass_basis(m, t) + c * g[0];
  for (std::size_t k = 1; k <= 4; ++k) j[k] = -e * g[k - 1] + c * g[k];
  j[1] += 0.25;
  return j;
}

Jet eguchi_hanson_jet(double a, double t) {
  const double a2 = a * a;
  const double a4 = a2 * a2;
  const double s = std::sqrt(t * t + a4);
  const double s_minus_t = a4 / (s + t);
  // log((a^2 + S)/t) = log1p((a^2 + S - t)/t), cancellation free for large t.
  const double log_term = std::log1p((a2 + s_minus_t) / t);
  Jet j{};
  j[0] = 0.25 * (s - a2 * log_term);
  j[1] = s / (4.0 * t);
  j[2] = -a4 / (4.0 * t * t * s);
  j[3] = a4 * (3.0 * t * t + 2.0 * a4) / (4.0 * t * t * t * s * s * s);
  const double t2 = t * t;
  j[4] = -a4 * (12.0 * t2 * t2 + 15.0 * a4 * t2 + 6.0 * a4 * a4) / (4.0 * t2 * t2 * std::pow(s, 5));
  return j;
}

MomentJet eguchi_hanson_moment(double a, double t) {
  const double a4 = a * a * a * a;
  const double s = std::sqrt(t * t + a4);
  return {t / (4.0 * s), a4 / (4.0 * s * s * s), -3.0 * a4 * t / (4.0 * std::pow(s, 5))};
}

Jet burns_jet(double a, double t) {
  Jet j{};
  j[0] = 0.25 * t + a * std::log(t);
  j[1] = 0.25 + a / t;
  j[2] = -a / (t * t);
  j[3] = 2.0 * a / (t * t * t);
  j[4] = -6.0 * a / (t * t * t * t);
  return j;
}

ALEModelInvariants with_a(ALEModelInvariants inv) {
  inv.a = inv.xi_m * mass_normalization(inv.m);
  return inv;
}

}  // namespace

double mass_normalization(int m) { return factorial(m - 2) / (16.0 * std::pow(kPi, m)); }

bool ConsistencyReport::ok(double tol) const noexcept {
  return std::abs(xi_vs_a) <= tol && std::abs(rho_vs_mass) <= tol && std::abs(xi_vs_c) <= tol;
}

ConsistencyReport check_consistency(const ALEModelInvariants& inv) {
  ConsistencyReport r;
  const double k = mass_normalization(inv.m);
  r.xi_vs_a = inv.xi_m - inv.a / k;
  if (inv.scalar_flat) r.rho_vs_mass = inv.rho_xi + inv.e / (k * inv.gamma);
  if (inv.ricci_flat()) r.xi_vs_c = inv.xi_m - 4.0 * std::pow(kPi, inv.m) * inv.c / (factorial(inv.m - 2) * inv.gamma);
  return r;
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Flat: return "flat";
    case ModelKind::EguchiHanson: return "eguchi-hanson";
    case ModelKind::Burns: return "burns";
    case ModelKind::SyntheticTail: return "synthetic-tail";
    case ModelKind::CustomInvariants: return "custom";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "flat") return ModelKind::Flat;
  if (name == "eguchi-hanson") return ModelKind::EguchiHanson;
  if (name == "burns") return ModelKind::Burns;
  if (name == "synthetic-tail") return ModelKind::SyntheticTail;
  if (name == "custom") return ModelKind::CustomInvariants;
  throw PreconditionError("unknown model kind '" + name + "'");
}

ALEModel ALEModel::flat(int m, int gamma) {
  if (m < 2) throw PreconditionError("flat model needs m >= 2");
  if (gamma < 1) throw PreconditionError("flat model needs gamma >= 1");
  ALEModel model;
  model.kind_ = ModelKind::Flat;
  model.m_ = m;
  model.gamma_ = gamma;
  return model;
}

ALEModel ALEModel::eguchi_hanson(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("Eguchi-Hanson scale a must be positive");
  ALEModel model;
  model.kind_ = ModelKind::EguchiHanson;
  model.m_ = 2;
  model.gamma_ = 2;
  model.a_ = a;
  model.tail_ = {0.0, -std::pow(a, 4) / 8.0};
  return model;
}

ALEModel ALEModel::burns(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("Burns scale a must be positive");
  ALEModel model;
  model.kind_ = ModelKind::Burns;
  model.m_ = 2;
  model.gamma_ = 1;
  model.a_ = a;
  model.tail_ = {-a, 0.0};
  return model;
}

ALEModel ALEModel::synthetic_tail(int m, int gamma, double e, double c, double t_min) {
  if (m < 2) throw PreconditionError("synthetic tail needs m >= 2");
  if (gamma < 1) throw PreconditionError("synthetic tail needs gamma >= 1");
  if (!(t_min > 0.0) || !std::isfinite(t_min)) throw PreconditionError("synthetic tail needs t_min > 0");
  if (!std::isfinite(e) || !std::isfinite(c)) throw PreconditionError("synthetic tail constants must be finite");
  ALEModel model;
  model.kind_ = ModelKind::SyntheticTail;
  model.m_ = m;
  model.gamma_ = gamma;
  model.tail_ = {e, c};
  model.t_min_ = t_min;
  return model;
}

ALEModel ALEModel::custom(const ALEModelInvariants& inv) {
  if (inv.m < 2) throw PreconditionError("custom invariants need m >= 2");
  if (inv.gamma < 1) throw PreconditionError("custom invariants need gamma >= 1");
  ALEModel model;
  model.kind_ = ModelKind::CustomInvariants;
  model.m_ = inv.m;
  model.gamma_ = inv.gamma;
  model.tail_ = {inv.e, inv.c};
  model.custom_ = inv;
  return model;
}

std::string ALEModel::label() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case ModelKind::Flat: os << "(m=" << m_ << ",gamma=" << gamma_ << ")"; break;
    case ModelKind::EguchiHanson:
    case ModelKind::Burns: os << "(a=" << a_ << ")"; break;
    case ModelKind::SyntheticTail:
      os << "(m=" << m_ << ",gamma=" << gamma_ << ",e=" << tail_.e << ",c=" << tail_.c << ",t_min=" << t_min_ << ")";
      break;
    case ModelKind::CustomInvariants: os << "(m=" << m_ << ",gamma=" << gamma_ << ")"; break;
  }
  return os.str();
}

RadialProfile profile_of(const ALEModel& model) {
  const int m = model.dimension();
  const int gamma = model.group_order();
  const double a = model.scale();
  switch (model.kind()) {
    case ModelKind::Flat:
      return RadialProfile(m, gamma, 0.0, [](double t) { return Jet{0.25 * t, 0.25, 0.0, 0.0, 0.0}; },
                           Asymptotics{0.0, 0.0});
    case ModelKind::EguchiHanson:
      return RadialProfile(2, 2, 0.0, [a](double t) { return eguchi_hanson_jet(a, t); }, model.tail())
          .with_moment_jet([a](double t) { return eguchi_hanson_moment(a, t); });
    case ModelKind::Burns:
      return RadialProfile(2, 1, 0.0, [a](double t) { return burns_jet(a, t); }, model.tail())
          .with_moment_jet([](double) { return MomentJet{0.25, 0.0, 0.0}; });
    case ModelKind::SyntheticTail: {
      const Asymptotics tail = model.tail();
      return RadialProfile(m, gamma, model.t_min(), [m, tail](double t) { return tail_jet(m, tail.e, tail.c, t); },
                           tail);
    }
    case ModelKind::CustomInvariants:
      break;
  }
  throw PreconditionError("custom invariant packages carry no potential");
}

ALEModelInvariants invariants(const ALEModel& model, const QuadratureSpec& quad) {
  quad.validate();
  ALEModelInvariants inv;
  inv.m = model.dimension();
  inv.gamma = model.group_order();
  const double pm = std::pow(kPi, inv.m);
  switch (model.kind()) {
    case ModelKind::Flat:
      inv.scalar_flat = true;
      return inv;
    case ModelKind::EguchiHanson: {
      // Ricci flat: euclidean volume form, so int xi^2/2! = 4 pi^2 c / |Gamma|.
      inv.e = 0.0;
      inv.c = model.tail().c;
      inv.xi_m = 4.0 * pm * inv.c / (factorial(inv.m - 2) * inv.gamma);
      inv.rho_xi = 0.0;
      inv.scalar_flat = true;
      return with_a(inv);
    }
    case ModelKind::Burns: {
      // Ball volume is exactly pi^2 R^4 / 2 + 4 pi^2 a R^2.
      const double a = model.scale();
      inv.e = -a;
      inv.c = 0.0;
      inv.xi_m = -8.0 * kPi * kPi * a * a;
      inv.rho_xi = -16.0 * pm * inv.e / (factorial(inv.m - 2) * inv.gamma);
      inv.scalar_flat = true;
      return with_a(inv);
    }
    case ModelKind::SyntheticTail: {
      // The annulus (t_min, R^2) has exact boundary terms at both ends:
      //   volume       (4 pi)^m / (m! |Gamma|)      [ (t f')^m ]
      //   total scalar -(4 pi)^m / ((m-1)! |Gamma|) [ t^m L' f'^{m-1} ]
      // The inner ends play the role of the compactly supported xi.
      const int m = inv.m;
      const double e = model.tail().e;
      const double c = model.tail().c;
      const double t0 = model.t_min();
      const Jet j = tail_jet(m, e, c, t0);
      const double w = j[1] + t0 * j[2];
      if (!(j[1] > 0.0) || !(w > 0.0)) throw PositivityError("synthetic tail is not positive at t_min", t0);
      const double dL = (m - 1) * j[2] / j[1] + (2.0 * j[2] + t0 * j[3]) / w;
      const double flux_inner = std::pow(t0, m) * dL * std::pow(j[1], m - 1);
      const double flux_outer = std::pow(4.0, 2 - m) * (m - 1) * e;
      const double four_pi_m = std::pow(4.0 * kPi, m);
      inv.e = e;
      inv.c = c;
      inv.xi_m = -four_pi_m / (factorial(m) * inv.gamma) * std::pow(t0 * j[1], m);
      const double total = -four_pi_m / (factorial(m - 1) * inv.gamma) * (flux_outer - flux_inner);
      inv.rho_xi = total - 16.0 * pm * e / (factorial(m - 2) * inv.gamma);
      inv.scalar_flat = (e == 0.0 && c == 0.0) || (m == 2 && c == 0.0);
      return with_a(inv);
    }
    case ModelKind::CustomInvariants:
      return *model.custom_invariants();
  }
  throw PreconditionError("unhandled model kind");
}

ExtractionPlan default_extraction_plan(int m) {
  if (m < 2) throw PreconditionError("extraction plan needs m >= 2");
  ExtractionPlan plan;
  plan.fit_t = geometric_schedule(1e3, 1e6, 16);
  if (m == 2) {
    plan.R_schedule = {10.0, 30.0, 100.0, 300.0};
  } else {
    plan.R_schedule = geometric_schedule(4.0, 64.0, 5);
  }
  plan.quad = QuadratureSpec{1e-12, 1e-14, 8192};
  return plan;
}

ExtractedInvariants extract_invariants(const RadialProfile& profile, const ExtractionPlan& plan) {
  ExtractedInvariants out;
  std::vector<std::pair<double, double>> samples;
  samples.reserve(plan.fit_t.size());
  for (double t : plan.fit_t) samples.emplace_back(t, profile.value(t));
  out.fit = fit_asymptotics(samples, profile.dimension());

  const Asymptotics partial{out.fit.e_hat, out.fit.c_hat};
  out.xi = xi_integral_from_volume(profile, partial, plan.R_schedule, plan.quad);
  out.total_scalar = total_scalar_limit(profile, plan.R_schedule, plan.quad);

  ALEModelInvariants& inv = out.inv;
  inv.m = profile.dimension();
  inv.gamma = profile.group_order();
  inv.e = out.fit.e_hat;
  inv.c = out.fit.c_hat;
  inv.xi_m = out.xi.value;
  inv.rho_xi = out.total_scalar.value - 16.0 * std::pow(kPi, inv.m) * inv.e / (factorial(inv.m - 2) * inv.gamma);
  inv.a = inv.xi_m * mass_normalization(inv.m);
  inv.scalar_flat = std::abs(out.total_scalar.value) <= std::max(1e-8, 4.0 * out.total_scalar.error_estimate);
  return out;
}

std::vector<ALEModel> catalog() {
  return {ALEModel::flat(2, 1), ALEModel::eguchi_hanson(1.0), ALEModel::burns(1.0)};
}

}  // namespace ale
