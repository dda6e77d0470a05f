#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ale/csv.hpp"
#include "ale/errors.hpp"
#include "ale/models.hpp"
#include "ale/radial.hpp"
#include "ale/report.hpp"
#include "ale/scenario.hpp"
#include "ale/verify.hpp"

namespace {

using nlohmann::json;

// Exit codes above the classify range.
constexpr int kFitFailure = 3;
constexpr int kInputError = 4;
constexpr int kNumericalFailure = 5;

struct Options {
  std::string model;
  double a = 1.0;
  int m = 2;
  int gamma = 1;
  double e = 0.0;
  double c = 0.0;
  double t_min = 2.0;
  std::string samples;
  std::string check = "volume";
  std::vector<double> radii{10.0, 30.0, 100.0, 300.0, 1000.0};
  double t_fit_min = 0.0;

  std::vector<std::string> scenarios;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
  std::optional<double> zero_tol;
  std::optional<double> rank_tol;
  std::string report_path;

  double rel_tol = ale::QuadratureSpec{}.rel_tol;
  double abs_tol = ale::QuadratureSpec{}.abs_tol;
  bool json_out = false;
  bool no_timestamp = false;
  bool annotate_pi = false;
};

ale::QuadratureSpec quad_of(const Options& o) {
  ale::QuadratureSpec q;
  q.rel_tol = o.rel_tol;
  q.abs_tol = o.abs_tol;
  q.validate();
  return q;
}

ale::ALEModel model_from(const Options& o) {
  switch (ale::parse_model_kind(o.model)) {
    case ale::ModelKind::Flat: return ale::ALEModel::flat(o.m, o.gamma);
    case ale::ModelKind::EguchiHanson: return ale::ALEModel::eguchi_hanson(o.a);
    case ale::ModelKind::Burns: return ale::ALEModel::burns(o.a);
    case ale::ModelKind::SyntheticTail: return ale::ALEModel::synthetic_tail(o.m, o.gamma, o.e, o.c, o.t_min);
    case ale::ModelKind::CustomInvariants: break;
  }
  throw ale::PreconditionError("custom models have no potential; use a scenario file");
}

json rows_json(const ale::VerifyResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"R", row.R}, {"pass", row.pass}};
    if (row.error.empty()) {
      j["measured"] = row.measured;
      j["predicted"] = row.predicted;
      j["residual"] = row.residual;
      j["scaled"] = row.scaled;
      j["noise_floor"] = row.noise_floor;
    } else {
      j["error"] = row.error;
    }
    rows.push_back(j);
  }
  return rows;
}

int cmd_verify(const Options& o) {
  const ale::QuadratureSpec quad = quad_of(o);
  const ale::VerifyCheck check = ale::parse_verify_check(o.check);
  json meta;
  std::optional<ale::RadialProfile> profile;
  ale::ALEModelInvariants inv;
  if (!o.samples.empty()) {
    // Sampled potential: invariants come from the extraction pipeline on the
    // upper half (in log t) of the samples and on the requested radii.
    const auto samples = ale::read_samples(o.samples);
    profile = ale::RadialProfile::from_samples(o.m, o.gamma, samples);
    ale::ExtractionPlan plan;
    const double mid = std::sqrt(samples.front().first * samples.back().first);
    for (const auto& s : samples) {
      if (s.first >= mid) plan.fit_t.push_back(s.first);
    }
    plan.R_schedule = o.radii;
    plan.quad = quad;
    inv = ale::extract_invariants(*profile, plan).inv;
    meta["source"] = o.samples;
  } else {
    if (o.model.empty()) throw ale::PreconditionError("verify needs --model or --samples");
    const ale::ALEModel model = model_from(o);
    profile = ale::profile_of(model);
    inv = ale::invariants(model, quad);
    meta["model"] = model.label();
  }
  const ale::VerifyResult result = ale::verify_profile(*profile, inv, check, o.radii, quad);
  if (o.json_out) {
    meta["check"] = ale::to_string(check);
    meta["invariants"] = ale::to_json(inv, o.annotate_pi);
    meta["rows"] = rows_json(result);
    meta["pass"] = result.pass;
    std::cout << meta.dump(2) << "\n";
  } else {
    std::cout << ale::residual_csv(result);
  }
  return result.pass ? 0 : kNumericalFailure;
}

int cmd_fit(const Options& o) {
  if (o.samples.empty()) throw ale::PreconditionError("fit needs --samples");
  const auto samples = ale::read_samples(o.samples);
  ale::FitOptions fo;
  fo.t_fit_min = o.t_fit_min;
  if (o.rank_tol) fo.rank_tol = *o.rank_tol;
  const ale::AsymptoticFit fit = ale::fit_asymptotics(samples, o.m, fo);
  const json out{{"m", o.m},
                 {"e", fit.e_hat},
                 {"c", fit.c_hat},
                 {"const", fit.const_hat},
                 {"rms_residual", fit.rms_residual},
                 {"samples_used", fit.samples_used}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

ale::Scenario scenario_with_overrides(const std::string& path, const Options& o) {
  ale::Scenario s = ale::load_scenario(path);
  if (o.zero_tol) s.tolerances.zero_tol = *o.zero_tol;
  if (o.rank_tol) s.tolerances.rank_tol = *o.rank_tol;
  s.tolerances.validate();
  return s;
}

ale::ReportOptions report_options(const Options& o) {
  ale::ReportOptions ro;
  ro.epsilons = o.epsilons;
  ro.timestamp = !o.no_timestamp;
  ro.annotate_pi = o.annotate_pi;
  ro.quad = quad_of(o);
  return ro;
}

void emit(const json& out, const Options& o, const std::string& summary) {
  if (!o.report_path.empty()) {
    std::ofstream f(o.report_path);
    if (!f) throw ale::PreconditionError("cannot write report '" + o.report_path + "'");
    f << out.dump(2) << "\n";
  }
  if (o.json_out) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << summary;
  }
}

int cmd_classify(const Options& o) {
  if (o.scenarios.empty()) throw ale::PreconditionError("classify needs --scenario");
  const ale::ReportOptions ro = report_options(o);
  json reports = json::array();
  std::string summary;
  int code = 0;
  for (const auto& path : o.scenarios) {
    const json report = ale::build_report(scenario_with_overrides(path, o), ro);
    code = std::max(code, report.at("exit_code").get<int>());
    summary += ale::summarize(report);
    reports.push_back(report);
  }
  emit(reports.size() == 1 ? reports[0] : reports, o, summary);
  return code;
}

int cmd_expand(const Options& o) {
  if (o.scenarios.empty()) throw ale::PreconditionError("expand needs --scenario");
  const ale::ReportOptions ro = report_options(o);
  json reports = json::array();
  std::string summary;
  for (const auto& path : o.scenarios) {
    const json report = ale::build_expansion_report(scenario_with_overrides(path, o), ro);
    summary += ale::summarize(report);
    reports.push_back(report);
  }
  emit(reports.size() == 1 ? reports[0] : reports, o, summary);
  return 0;
}

int cmd_models(const Options& o) {
  std::vector<ale::ALEModel> models{ale::ALEModel::flat(2, 1), ale::ALEModel::eguchi_hanson(o.a),
                                    ale::ALEModel::burns(o.a)};
  json rows = json::array();
  for (const auto& model : models) {
    rows.push_back({{"model", model.label()},
                    {"orbifold_eligible", model.orbifold_eligible()},
                    {"invariants", ale::to_json(ale::invariants(model), o.annotate_pi)}});
  }
  if (o.json_out) {
    std::cout << rows.dump(2) << "\n";
    return 0;
  }
  std::cout << "model,m,gamma,e,c,xi_m,rho_xi,a,scalar_flat\n";
  for (const auto& model : models) {
    const ale::ALEModelInvariants inv = ale::invariants(model);
    std::cout << model.label() << ',' << inv.m << ',' << inv.gamma;
    for (double x : {inv.e, inv.c, inv.xi_m, inv.rho_xi, inv.a}) {
      std::cout << ',' << ale::format_double(x);
      if (o.annotate_pi) {
        if (auto s = ale::recognize_pi_multiple(x)) std::cout << " [" << *s << "]";
      }
    }
    std::cout << ',' << (inv.scalar_flat ? "true" : "false") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alekit: radial ALE Kähler models, adiabatic Futaki expansions and cscK verdicts"};
  app.set_version_flag("--version", std::string(ale::version()));
  app.require_subcommand(1);
  Options o;

  const auto add_quad = [&o](CLI::App* sub) {
    sub->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance");
    sub->add_option("--abs-tol", o.abs_tol, "Quadrature absolute tolerance");
  };
  const auto add_model = [&o](CLI::App* sub) {
    sub->add_option("--model", o.model, "flat, eguchi-hanson, burns or synthetic-tail");
    sub->add_option("--a", o.a, "Scale parameter of eguchi-hanson and burns");
    sub->add_option("--m", o.m, "Complex dimension");
    sub->add_option("--gamma", o.gamma, "Group order");
    sub->add_option("--e", o.e, "Mass coefficient of synthetic-tail");
    sub->add_option("--c", o.c, "Second coefficient of synthetic-tail");
    sub->add_option("--t-min", o.t_min, "Inner end of synthetic-tail");
  };
  const auto add_scenario = [&o](CLI::App* sub) {
    sub->add_option("--scenario", o.scenarios, "Scenario JSON file(s)")->required()->check(CLI::ExistingFile);
    sub->add_option("--zero-tol", o.zero_tol, "Override the scenario zero_tol");
    sub->add_option("--rank-tol", o.rank_tol, "Override the scenario rank_tol");
    sub->add_option("--epsilons", o.epsilons, "Epsilon values for the lambda tables")->delimiter(',');
    sub->add_option("--report", o.report_path, "Also write the JSON report to this file");
    sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field");
  };

  auto* verify = app.add_subcommand("verify", "Ball volume or total scalar curvature against the large-R predictions");
  add_model(verify);
  add_quad(verify);
  verify->add_option("--samples,--profile", o.samples, "Potential samples as a t,f CSV")->check(CLI::ExistingFile);
  verify->add_option("--check", o.check, "volume or scalar");
  verify->add_option("--radii", o.radii, "Increasing radius schedule")->delimiter(',');
  verify->add_flag("--json", o.json_out, "JSON instead of CSV");
  verify->add_flag("--annotate-pi", o.annotate_pi, "Annotate recognized rational multiples of pi powers");

  auto* fit = app.add_subcommand("fit", "Least-squares fit of the tail coefficients (e, c)");
  fit->add_option("--samples,--profile", o.samples, "Potential samples as a t,f CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--m", o.m, "Complex dimension");
  fit->add_option("--t-fit-min", o.t_fit_min, "Ignore samples below this t");
  fit->add_option("--rank-tol", o.rank_tol, "Relative singular value cutoff");
  fit->add_flag("--json", o.json_out, "JSON output (always on)");

  auto* classify = app.add_subcommand("classify", "Futaki expansion and existence verdict of a scenario");
  add_scenario(classify);
  add_quad(classify);
  classify->add_flag("--json", o.json_out, "Print the JSON report instead of the summary");
  classify->add_flag("--annotate-pi", o.annotate_pi, "Annotate recognized rational multiples of pi powers");

  auto* expand = app.add_subcommand("expand", "Futaki expansion coefficients of a scenario");
  add_scenario(expand);
  add_quad(expand);
  expand->add_flag("--json", o.json_out, "Print JSON instead of the summary");
  expand->add_flag("--annotate-pi", o.annotate_pi, "Annotate recognized rational multiples of pi powers");

  auto* models = app.add_subcommand("models", "Catalog models and their invariants");
  models->add_option("--a", o.a, "Scale parameter of eguchi-hanson and burns");
  models->add_flag("--json", o.json_out, "JSON instead of CSV");
  models->add_flag("--annotate-pi", o.annotate_pi, "Annotate recognized rational multiples of pi powers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*fit) return cmd_fit(o);
    if (*classify) return cmd_classify(o);
    if (*expand) return cmd_expand(o);
    if (*models) return cmd_models(o);
  } catch (const ale::SchemaError& err) {
    std::cerr << "alekit: schema error at " << err.what() << "\n";
    return kInputError;
  } catch (const ale::FitError& err) {
    std::cerr << "alekit: fit failed: " << err.what() << "\n";
    return kFitFailure;
  } catch (const ale::PreconditionError& err) {
    std::cerr << "alekit: " << err.what() << "\n";
    return kInputError;
  } catch (const ale::DimensionError& err) {
    std::cerr << "alekit: " << err.what() << "\n";
    return kInputError;
  } catch (const ale::Error& err) {
    std::cerr << "alekit: numerical failure: " << err.what() << "\n";
    return kNumericalFailure;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "alekit: " << err.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
