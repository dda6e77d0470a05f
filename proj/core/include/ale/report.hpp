#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ale/scenario.hpp"

namespace ale {

/// Library version string, e.g. "0.3.0".
const char* version();

struct ReportOptions {
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
  bool timestamp = true;
  bool annotate_pi = false;
  QuadratureSpec quad{};
};

/// Report for one scenario: echo, per-point invariants, expansion, (D1, D2),
/// verdict, balancing step and lambda tables. Deterministic apart from the
/// optional "timestamp" field.
nlohmann::json build_report(const Scenario& scenario, const ReportOptions& options = {});

/// Expansion and reduction only, no verdict.
nlohmann::json build_expansion_report(const Scenario& scenario, const ReportOptions& options = {});

nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const ALEModelInvariants& inv, bool annotate_pi = false);

/// 0 existence, 1 non-existence, 2 inconclusive.
int exit_code(Regime regime) noexcept;

/// Recognizes x = (p/q) pi^k with small p, q and 0 <= k <= 6, e.g. "-8*pi^2".
std::optional<std::string> recognize_pi_multiple(double x);

/// Human-readable digest of a report from build_report.
std::string summarize(const nlohmann::json& report);

}  // namespace ale
