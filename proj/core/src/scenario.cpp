#include "ale/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ale/errors.hpp"

namespace ale {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& require(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child(path, key), "missing required field");
  return *it;
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw SchemaError(child(path, it.key()), "unknown field");
  }
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
  return x;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) throw SchemaError(path, "integer out of range");
  return static_cast<int>(x);
}

std::vector<double> as_vector(const json& v, const std::string& path, int length) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  if (static_cast<int>(v.size()) != length) {
    throw SchemaError(path, "expected " + std::to_string(length) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], child(path, i)));
  return out;
}

ModelSpec parse_model(const json& v, const std::string& path) {
  require_object(v, path);
  const json& kind = require(v, path, "kind");
  if (!kind.is_string()) throw SchemaError(child(path, "kind"), "expected a string");
  ModelSpec spec;
  try {
    spec.kind = parse_model_kind(kind.get<std::string>());
  } catch (const PreconditionError& err) {
    throw SchemaError(child(path, "kind"), err.what());
  }
  switch (spec.kind) {
    case ModelKind::Flat:
      reject_unknown(v, path, {"kind"});
      break;
    case ModelKind::EguchiHanson:
    case ModelKind::Burns:
      reject_unknown(v, path, {"kind", "a"});
      if (v.contains("a")) spec.a = as_real(v["a"], child(path, "a"));
      if (!(spec.a > 0.0)) throw SchemaError(child(path, "a"), "scale must be positive");
      break;
    case ModelKind::SyntheticTail:
      reject_unknown(v, path, {"kind", "e", "c", "t_min"});
      spec.e = as_real(require(v, path, "e"), child(path, "e"));
      spec.c = as_real(require(v, path, "c"), child(path, "c"));
      spec.t_min = as_real(require(v, path, "t_min"), child(path, "t_min"));
      if (!(spec.t_min > 0.0)) throw SchemaError(child(path, "t_min"), "t_min must be positive");
      break;
    case ModelKind::CustomInvariants: {
      reject_unknown(v, path, {"kind", "invariants"});
      const std::string ipath = child(path, "invariants");
      const json& inv = require(v, path, "invariants");
      require_object(inv, ipath);
      reject_unknown(inv, ipath, {"e", "c", "xi_m", "rho_xi", "a", "scalar_flat"});
      ALEModelInvariants out;
      out.e = as_real(require(inv, ipath, "e"), child(ipath, "e"));
      out.c = as_real(require(inv, ipath, "c"), child(ipath, "c"));
      out.xi_m = as_real(require(inv, ipath, "xi_m"), child(ipath, "xi_m"));
      out.rho_xi = as_real(require(inv, ipath, "rho_xi"), child(ipath, "rho_xi"));
      const json& sf = require(inv, ipath, "scalar_flat");
      if (!sf.is_boolean()) throw SchemaError(child(ipath, "scalar_flat"), "expected a boolean");
      out.scalar_flat = sf.get<bool>();
      // a is checked against xi_m once the dimension is known (resolve).
      out.a = inv.contains("a") ? as_real(inv["a"], child(ipath, "a")) : std::nan("");
      spec.invariants = out;
      break;
    }
  }
  return spec;
}

PointSpec parse_point(const json& v, const std::string& path, int d) {
  require_object(v, path);
  reject_unknown(v, path, {"id", "gamma", "model", "mu", "laplacian_mu"});
  PointSpec p;
  const json& id = require(v, path, "id");
  if (!id.is_string() || id.get<std::string>().empty()) throw SchemaError(child(path, "id"), "expected a non-empty string");
  p.id = id.get<std::string>();
  p.gamma = as_int(require(v, path, "gamma"), child(path, "gamma"));
  if (p.gamma < 2) throw SchemaError(child(path, "gamma"), "orbifold points need gamma >= 2");
  p.model = parse_model(require(v, path, "model"), child(path, "model"));
  p.mu = as_vector(require(v, path, "mu"), child(path, "mu"), d);
  p.laplacian_mu = as_vector(require(v, path, "laplacian_mu"), child(path, "laplacian_mu"), d);
  return p;
}

json model_json(const ModelSpec& spec) {
  json out;
  out["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case ModelKind::Flat: break;
    case ModelKind::EguchiHanson:
    case ModelKind::Burns: out["a"] = spec.a; break;
    case ModelKind::SyntheticTail:
      out["e"] = spec.e;
      out["c"] = spec.c;
      out["t_min"] = spec.t_min;
      break;
    case ModelKind::CustomInvariants: {
      const ALEModelInvariants& inv = *spec.invariants;
      json j;
      j["e"] = inv.e;
      j["c"] = inv.c;
      j["xi_m"] = inv.xi_m;
      j["rho_xi"] = inv.rho_xi;
      if (!std::isnan(inv.a)) j["a"] = inv.a;
      j["scalar_flat"] = inv.scalar_flat;
      out["invariants"] = j;
      break;
    }
  }
  return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"name", "dimension", "d", "s_bar", "base_futaki", "tolerances", "points"});
  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw SchemaError("/name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }
  s.m = as_int(require(doc, "", "dimension"), "/dimension");
  if (s.m < 2) throw SchemaError("/dimension", "dimension must be >= 2");
  s.d = as_int(require(doc, "", "d"), "/d");
  if (s.d < 0) throw SchemaError("/d", "d must be >= 0");
  s.s_bar = as_real(require(doc, "", "s_bar"), "/s_bar");
  if (doc.contains("base_futaki")) s.base_futaki = as_vector(doc["base_futaki"], "/base_futaki", s.d);

  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    require_object(tol, "/tolerances");
    reject_unknown(tol, "/tolerances", {"zero_tol", "rank_tol"});
    if (tol.contains("zero_tol")) s.tolerances.zero_tol = as_real(tol["zero_tol"], "/tolerances/zero_tol");
    if (tol.contains("rank_tol")) s.tolerances.rank_tol = as_real(tol["rank_tol"], "/tolerances/rank_tol");
    if (!(s.tolerances.zero_tol > 0.0)) throw SchemaError("/tolerances/zero_tol", "must be positive");
    if (!(s.tolerances.rank_tol > 0.0)) throw SchemaError("/tolerances/rank_tol", "must be positive");
  }

  const json& points = require(doc, "", "points");
  if (!points.is_array()) throw SchemaError("/points", "expected an array");
  if (points.empty()) throw SchemaError("/points", "at least one point is required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = child("/points", i);
    s.points.push_back(parse_point(points[i], path, s.d));
    if (!ids.insert(s.points.back().id).second) throw SchemaError(child(path, "id"), "duplicate point id");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("/", "cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw SchemaError("/", std::string("invalid JSON: ") + err.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json out;
  if (!s.name.empty()) out["name"] = s.name;
  out["dimension"] = s.m;
  out["d"] = s.d;
  out["s_bar"] = s.s_bar;
  if (!s.base_futaki.empty()) out["base_futaki"] = s.base_futaki;
  out["tolerances"] = {{"zero_tol", s.tolerances.zero_tol}, {"rank_tol", s.tolerances.rank_tol}};
  json points = json::array();
  for (const auto& p : s.points) {
    json j;
    j["id"] = p.id;
    j["gamma"] = p.gamma;
    j["model"] = model_json(p.model);
    j["mu"] = p.mu;
    j["laplacian_mu"] = p.laplacian_mu;
    points.push_back(j);
  }
  out["points"] = points;
  return out;
}

ALEModel model_of(const PointSpec& point, int m) {
  const ModelSpec& spec = point.model;
  switch (spec.kind) {
    case ModelKind::Flat: return ALEModel::flat(m, point.gamma);
    case ModelKind::EguchiHanson: return ALEModel::eguchi_hanson(spec.a);
    case ModelKind::Burns: return ALEModel::burns(spec.a);
    case ModelKind::SyntheticTail: return ALEModel::synthetic_tail(m, point.gamma, spec.e, spec.c, spec.t_min);
    case ModelKind::CustomInvariants: {
      ALEModelInvariants inv = *spec.invariants;
      inv.m = m;
      inv.gamma = point.gamma;
      return ALEModel::custom(inv);
    }
  }
  throw PreconditionError("unhandled model kind");
}

OrbifoldConfig resolve(const Scenario& s, const QuadratureSpec& quad) {
  OrbifoldConfig config;
  config.m = s.m;
  config.d = s.d;
  config.s_bar = s.s_bar;
  config.base_futaki = s.base_futaki.empty() ? Eigen::VectorXd::Zero(s.d) : to_eigen(s.base_futaki);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const PointSpec& p = s.points[i];
    const std::string path = child(child("/points", i), "model");
    ALEModel model = [&] {
      try {
        return model_of(p, s.m);
      } catch (const PreconditionError& err) {
        throw SchemaError(path, err.what());
      }
    }();
    if (!model.orbifold_eligible()) {
      throw SchemaError(path, "model " + model.label() + " has trivial group and cannot resolve an orbifold point");
    }
    if (model.group_order() != p.gamma) {
      throw SchemaError(path, "model group order " + std::to_string(model.group_order()) + " differs from gamma " +
                                  std::to_string(p.gamma));
    }
    if (model.dimension() != s.m) {
      throw SchemaError(path, "model dimension " + std::to_string(model.dimension()) + " differs from scenario dimension");
    }
    ALEModelInvariants inv = invariants(model, quad);
    if (model.kind() == ModelKind::CustomInvariants) {
      const double derived = inv.xi_m * mass_normalization(s.m);
      if (std::isnan(inv.a)) {
        inv.a = derived;
      } else if (std::abs(inv.a - derived) > 1e-9 * std::max(1.0, std::abs(derived))) {
        throw SchemaError(child(path, "invariants/a"), "inconsistent with xi_m");
      }
    }
    SingularPointDatum datum;
    datum.id = p.id;
    datum.gamma = p.gamma;
    datum.mu = to_eigen(p.mu);
    datum.lap_mu = to_eigen(p.laplacian_mu);
    datum.inv = inv;
    config.points.push_back(std::move(datum));
  }
  if (!s.base_futaki.empty() && static_cast<int>(s.base_futaki.size()) != s.d) {
    throw SchemaError("/base_futaki", "length differs from d");
  }
  config.validate();
  return config;
}

}  // namespace ale
