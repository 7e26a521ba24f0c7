#pragma once

#include "aspmtqs/cli/pipeline.hpp"

#include <json.hpp>

namespace aspmtqs::cli {

struct RunReport {
  std::string command;
  /// sat, unsat, unknown, timeout, solver-error; entailed, not entailed;
  /// or the number of stable models for the oracle.
  std::string verdict;
  PhaseTimings timings;
  std::optional<smt::Model> model;
  /// Oracle runs: every stable model.
  std::vector<Interpretation> models;
  std::vector<std::string> warnings;
};

/// Human-readable report.
std::string to_text(const RunReport& report);

/// Structured report:
/// {"command", "verdict", "timings_ms": [{"phase", "ms"}...],
///  "model": {"reals": {key: {"value", "decimal", "approximate"}}, "booleans": {key: bool}}
///           or null, "models": [...] (oracle only), "warnings": [...]}
nlohmann::json to_json(const RunReport& report);

}  // namespace aspmtqs::cli
