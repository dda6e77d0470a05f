#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ale/futaki.hpp"
#include "ale/models.hpp"
#include "ale/stability.hpp"

namespace ale {

/// Model reference inside a scenario. Parameters not used by `kind` stay at
/// their defaults and are not echoed.
struct ModelSpec {
  ModelKind kind = ModelKind::Flat;
  double a = 1.0;        // eguchi-hanson, burns
  double e = 0.0;        // synthetic-tail
  double c = 0.0;        // synthetic-tail
  double t_min = 1.0;    // synthetic-tail
  std::optional<ALEModelInvariants> invariants;  // custom; m and gamma come from the scenario
};

struct PointSpec {
  std::string id;
  int gamma = 2;
  ModelSpec model;
  std::vector<double> mu;
  std::vector<double> laplacian_mu;
};

/// Parsed scenario document:
///
///   { "name": "...",                         optional
///     "dimension": m, "d": d, "s_bar": s,
///     "base_futaki": [d reals],              optional, default 0
///     "tolerances": {"zero_tol": .., "rank_tol": ..},   optional
///     "points": [ { "id": "p1", "gamma": 2,
///                   "model": {"kind": "eguchi-hanson", "a": 1},
///                   "mu": [..], "laplacian_mu": [..] } ] }
///
/// Custom models carry {"kind": "custom", "invariants": {"e", "c", "xi_m",
/// "rho_xi", "scalar_flat", "a" (optional, derived from xi_m when absent)}}.
struct Scenario {
  std::string name;
  int m = 2;
  int d = 0;
  double s_bar = 0.0;
  std::vector<double> base_futaki;
  ToleranceSpec tolerances;
  std::vector<PointSpec> points;
};

/// Throws SchemaError with a JSON pointer to the offending field.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Canonical echo; parse_scenario(to_json(s)) reproduces s.
nlohmann::json to_json(const Scenario& scenario);

/// Builds models, computes their invariants and assembles the configuration.
/// Points need an orbifold-eligible model (|Gamma| >= 2) whose group order
/// and dimension match the point; violations are SchemaErrors.
OrbifoldConfig resolve(const Scenario& scenario, const QuadratureSpec& quad = {});

ALEModel model_of(const PointSpec& point, int m);

}  // namespace ale
