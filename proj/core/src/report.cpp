#include "ale/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <sstream>

#include "ale/csv.hpp"
#include "ale/errors.hpp"

#ifndef ALEKIT_VERSION
#define ALEKIT_VERSION "0.0.0"
#endif

namespace ale {

namespace {

using nlohmann::json;

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json schedules_json(const std::vector<Schedule>& sched) {
  json out = json::array();
  for (const auto& s : sched) {
    out.push_back({{"id", s.id}, {"exponent", s.exponent}, {"factor", s.factor}, {"power", s.power}});
  }
  return out;
}

std::string reason_name(BalancingError::Reason r) {
  switch (r) {
    case BalancingError::Reason::RankDeficient: return "rank_deficient";
    case BalancingError::Reason::OutsideChart: return "outside_chart";
    case BalancingError::Reason::Residual: return "residual";
  }
  return "unknown";
}

// Balancing step plus lambda values at every epsilon; falls back to t = 0
// (flagged) when the linearized step has no admissible solution.
json balancing_json(const OrbifoldConfig& config, const Verdict& verdict, bool alternative,
                    const std::vector<double>& epsilons) {
  json out;
  BalancingSolution sol;
  sol.t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(config.points.size()));
  try {
    sol = balance(config, verdict, alternative);
    out["balanced"] = true;
    out["t"] = vec(sol.t);
    out["residual"] = sol.residual;
    out["jacobian_rank"] = sol.jacobian_rank;
  } catch (const BalancingError& err) {
    out["balanced"] = false;
    out["error"] = err.what();
    out["reason"] = reason_name(err.reason());
  }
  json table = json::array();
  for (double eps : epsilons) {
    json values = json::array();
    for (const auto& [id, lambda] : lambda_schedule(verdict, sol, eps, alternative)) {
      values.push_back({{"id", id}, {"lambda", lambda}});
    }
    table.push_back({{"epsilon", eps}, {"values", values}});
  }
  out["lambda"] = table;
  return out;
}

void check_epsilons(const std::vector<double>& epsilons) {
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw PreconditionError("epsilons must be positive and finite");
  }
}

json header(const ReportOptions& options) {
  json out;
  out["tool"] = {{"name", "alekit"}, {"version", version()}};
  if (options.timestamp) out["timestamp"] = utc_now();
  return out;
}

json points_json(const OrbifoldConfig& config, bool annotate_pi) {
  json out = json::array();
  for (const auto& p : config.points) out.push_back({{"id", p.id}, {"invariants", to_json(p.inv, annotate_pi)}});
  return out;
}

json expansion_json(const OrbifoldConfig& config) {
  const FutakiExpansion exp = expansion(config);
  json out;
  out["expansion"] = {{"m", exp.m}, {"F0", vec(exp.F0)}, {"C_lead", vec(exp.C_lead)}, {"C_next", vec(exp.C_next)}};
  try {
    const ScalarFlatReduction red = scalar_flat_reduction(config);
    const double k = bridge_factor(config.m);
    out["reduction"] = {{"D1", vec(red.D1)},
                        {"D2", vec(red.D2)},
                        {"bridge_factor", k},
                        {"lead_bridge_residual", (exp.C_lead + k * red.D1).norm()},
                        {"next_bridge_residual", (exp.C_next + k * red.D2).norm()}};
  } catch (const PreconditionError& err) {
    out["reduction"] = {{"error", err.what()}};
  }
  return out;
}

}  // namespace

const char* version() { return ALEKIT_VERSION; }

int exit_code(Regime regime) noexcept {
  if (is_existence(regime)) return 0;
  return regime == Regime::NonExistenceEqualScale ? 1 : 2;
}

std::optional<std::string> recognize_pi_multiple(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return "0";
  for (int k = 0; k <= 6; ++k) {
    const double r = x / std::pow(std::numbers::pi, k);
    for (int q = 1; q <= 256; ++q) {
      const double p = std::round(r * q);
      if (p == 0.0 || std::abs(p) > 1e6) continue;
      if (std::abs(p / q - r) > 1e-12 * std::abs(r)) continue;
      std::ostringstream os;
      os << static_cast<long long>(p);
      if (q != 1) os << '/' << q;
      if (k >= 1) os << "*pi";
      if (k >= 2) os << '^' << k;
      return os.str();
    }
  }
  return std::nullopt;
}

json to_json(const ALEModelInvariants& inv, bool annotate_pi) {
  json out{{"m", inv.m},           {"gamma", inv.gamma},   {"e", inv.e},
           {"c", inv.c},           {"xi_m", inv.xi_m},     {"rho_xi", inv.rho_xi},
           {"a", inv.a},           {"scalar_flat", inv.scalar_flat}, {"ricci_flat", inv.ricci_flat()}};
  if (annotate_pi) {
    json ann = json::object();
    for (const char* key : {"e", "c", "xi_m", "rho_xi", "a"}) {
      if (auto s = recognize_pi_multiple(out[key].get<double>())) ann[key] = *s;
    }
    out["pi_annotation"] = ann;
  }
  return out;
}

json to_json(const Verdict& v) {
  json witness{{"sum_vector", vec(v.witness.sum_vector)},
               {"sum_norm", v.witness.sum_norm},
               {"sum_scale", v.witness.sum_scale},
               {"rank", v.witness.rank},
               {"d", v.witness.d},
               {"Q", v.witness.Q},
               {"P", v.witness.P},
               {"borderline", v.witness.borderline}};
  json out{{"regime", to_string(v.regime)},
           {"equal_scale_obstructed", v.equal_scale_obstructed},
           {"witness", witness},
           {"schedules", schedules_json(v.schedules)},
           {"tolerances", {{"zero_tol", v.tolerances.zero_tol}, {"rank_tol", v.tolerances.rank_tol}}}};
  if (v.alternative) {
    out["alternative"] = {{"regime", to_string(*v.alternative)}, {"schedules", schedules_json(v.alternative_schedules)}};
  } else {
    out["alternative"] = nullptr;
  }
  return out;
}

json build_expansion_report(const Scenario& scenario, const ReportOptions& options) {
  const OrbifoldConfig config = resolve(scenario, options.quad);
  json out = header(options);
  out["scenario"] = to_json(scenario);
  out["points"] = points_json(config, options.annotate_pi);
  const json exp = expansion_json(config);
  out["expansion"] = exp["expansion"];
  out["reduction"] = exp["reduction"];
  return out;
}

json build_report(const Scenario& scenario, const ReportOptions& options) {
  check_epsilons(options.epsilons);
  const OrbifoldConfig config = resolve(scenario, options.quad);
  json out = header(options);
  out["scenario"] = to_json(scenario);
  out["points"] = points_json(config, options.annotate_pi);
  const json exp = expansion_json(config);
  out["expansion"] = exp["expansion"];
  out["reduction"] = exp["reduction"];

  const Verdict verdict = classify(config, scenario.tolerances);
  out["verdict"] = to_json(verdict);
  out["exit_code"] = exit_code(verdict.regime);
  out["epsilons"] = options.epsilons;
  out["balancing"] = is_existence(verdict.regime) ? balancing_json(config, verdict, false, options.epsilons) : json();
  out["alternative_balancing"] =
      verdict.alternative ? balancing_json(config, verdict, true, options.epsilons) : json();
  return out;
}

std::string summarize(const json& report) {
  std::ostringstream os;
  const json& scen = report.at("scenario");
  os << "scenario";
  if (scen.contains("name")) os << " " << scen["name"].get<std::string>();
  os << ": m = " << scen.at("dimension").get<int>() << ", d = " << scen.at("d").get<int>()
     << ", points = " << scen.at("points").size() << "\n";
  const json& exp = report.at("expansion");
  const auto print_vec = [&os](const char* name, const json& v) {
    os << "  " << name << " = [";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_double(v[i].get<double>());
    os << "]\n";
  };
  print_vec("C_lead", exp.at("C_lead"));
  print_vec("C_next", exp.at("C_next"));
  const json& red = report.at("reduction");
  if (red.contains("D1")) {
    print_vec("D1", red["D1"]);
    print_vec("D2", red["D2"]);
  }
  if (report.contains("verdict")) {
    const json& v = report["verdict"];
    const json& w = v.at("witness");
    os << "verdict: " << v.at("regime").get<std::string>() << "\n";
    os << "  witness |sum| = " << format_double(w.at("sum_norm").get<double>()) << ", rank "
       << w.at("rank").get<int>() << " of d = " << w.at("d").get<int>() << ", |Q| = " << w.at("Q").size()
       << ", |P| = " << w.at("P").size() << "\n";
    if (!w.at("borderline").empty()) os << "  borderline masses: " << w["borderline"].dump() << "\n";
    if (!v.at("alternative").is_null()) {
      os << "  adjusted scales: " << v["alternative"].at("regime").get<std::string>() << "\n";
    }
    for (const char* key : {"balancing", "alternative_balancing"}) {
      const json& b = report.at(key);
      if (b.is_null()) continue;
      os << "  " << key << ": " << (b.at("balanced").get<bool>() ? "solved" : "not solved (" + b["reason"].get<std::string>() + ")")
         << "\n";
      for (const auto& row : b.at("lambda")) {
        os << "    eps = " << format_double(row.at("epsilon").get<double>()) << ":";
        for (const auto& val : row.at("values")) {
          os << " " << val.at("id").get<std::string>() << "=" << format_double(val.at("lambda").get<double>());
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace ale
