#include "aspmtqs/cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace aspmtqs::cli {

namespace {

std::vector<std::pair<const char*, double>> phases(const PhaseTimings& t) {
  return {{"parse", t.parse}, {"ground", t.ground}, {"complete", t.complete}, {"solve", t.solve}};
}

}  // namespace

std::string to_text(const RunReport& r) {
  std::ostringstream out;
  out << "verdict: " << r.verdict << "\n";
  out << "timings (ms):";
  for (const auto& [name, ms] : phases(r.timings))
    out << " " << name << "=" << std::fixed << std::setprecision(1) << ms;
  out << "\n";
  if (r.model) {
    out << "model (solver-dependent values):\n";
    for (const auto& [k, v] : r.model->reals)
      out << "  " << k << " = " << (v.approximate ? "~" + v.decimal : to_string(v.value)) << "\n";
    for (const auto& [k, v] : r.model->booleans)
      out << "  " << k << " = " << (v ? "true" : "false") << "\n";
    if (r.model->has_approximations()) out << "  (~ marks decimal approximations of algebraic values)\n";
  }
  for (std::size_t i = 0; i < r.models.size(); ++i)
    out << "stable model " << i + 1 << ": " << to_string(r.models[i]) << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["verdict"] = r.verdict;
  j["timings_ms"] = nlohmann::json::array();
  for (const auto& [name, ms] : phases(r.timings)) j["timings_ms"].push_back({{"phase", name}, {"ms", ms}});
  if (r.model) {
    nlohmann::json reals = nlohmann::json::object();
    for (const auto& [k, v] : r.model->reals)
      reals[k] = {{"value", to_string(v.value)}, {"decimal", v.decimal}, {"approximate", v.approximate}};
    nlohmann::json booleans = nlohmann::json::object();
    for (const auto& [k, v] : r.model->booleans) booleans[k] = v;
    j["model"] = {{"reals", reals}, {"booleans", booleans}};
  } else {
    j["model"] = nullptr;
  }
  if (!r.models.empty() || r.command == "oracle") {
    j["models"] = nlohmann::json::array();
    for (const auto& m : r.models) {
      nlohmann::json atoms = nlohmann::json::array();
      for (const auto& [k, v] : m.atoms)
        if (v) atoms.push_back(k);
      nlohmann::json functions = nlohmann::json::object();
      for (const auto& [k, v] : m.functions) functions[k] = to_string(v);
      j["models"].push_back({{"true_atoms", atoms}, {"functions", functions}});
    }
  }
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace aspmtqs::cli
