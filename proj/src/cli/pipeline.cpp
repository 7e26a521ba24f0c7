#include "aspmtqs/cli/pipeline.hpp"

#include "aspmtqs/spatial/semantics.hpp"
#include "aspmtqs/spatial/symmetry.hpp"
#include "aspmtqs/syntax/parser.hpp"

#include <chrono>

namespace aspmtqs::cli {

namespace {

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <class F>
auto in_phase(const char* phase, F&& f) {
  try {
    return f();
  } catch (const PhaseError&) {
    throw;
  } catch (const Error& e) {
    throw PhaseError(phase, e.what());
  }
}

Compilation compile_parsed(Program program, std::span<const std::string> queries,
                           const CompileOptions& options, Stopwatch& clock, double parse_ms) {
  Compilation c;
  std::vector<Formula> raw_queries = in_phase("parse", [&] {
    std::vector<Formula> out;
    for (const auto& q : queries) out.push_back(parse_formula(q, program));
    return out;
  });
  c.timings.parse = parse_ms + clock.lap();
  c.program = program;

  in_phase("ground", [&] {
    Program prepared = prepare(program);
    auto violations = check_f_plain(prepared);
    auto av = check_av_separated(prepared);
    violations.insert(violations.end(), av.begin(), av.end());
    if (!violations.empty()) {
      std::string msg = std::to_string(violations.size()) + " input restriction violation(s)";
      for (const auto& v : violations)
        msg += "\n  " + std::to_string(v.where.line) + ":" + std::to_string(v.where.column) + ": " + v.message;
      throw GroundError(msg);
    }
    c.ground = ground(prepared);
    for (const auto& q : raw_queries) c.queries.push_back(ground_formula(q, prepared));
    spatial::add_spatial_semantics(c.ground, c.queries);
    return 0;
  });
  c.warnings = c.ground.warnings;
  c.timings.ground = clock.lap();

  if (options.complete) {
    in_phase("complete", [&] {
      c.cnf = to_clark_normal_form(c.ground);
      c.theory = complete(c.cnf);
      return 0;
    });
    c.warnings.insert(c.warnings.end(), c.theory.warnings.begin(), c.theory.warnings.end());
    c.timings.complete = clock.lap();
  }
  return c;
}

}  // namespace

Compilation compile(std::string_view source, std::span<const std::string> queries,
                    const CompileOptions& options) {
  Stopwatch clock;
  Program p = in_phase("parse", [&] { return parse_program(source); });
  double parse_ms = clock.lap();
  return compile_parsed(std::move(p), queries, options, clock, parse_ms);
}

Compilation compile(Program program, std::span<const std::string> queries,
                    const CompileOptions& options) {
  Stopwatch clock;
  return compile_parsed(std::move(program), queries, options, clock, 0);
}

smt::SmtScript script_for(const Compilation& c, std::span<const Formula> extra,
                          const smt::EmitOptions& options, bool symmetry) {
  std::vector<Formula> all(extra.begin(), extra.end());
  if (symmetry) {
    // Invariance only has to hold for what is actually asserted.
    CompletedTheory asserted = c.theory;
    if (options.prune) {
      std::vector<bool> kept = smt::kept_clauses(c.theory, extra);
      asserted.clauses.clear();
      for (std::size_t i = 0; i < kept.size(); ++i)
        if (kept[i]) asserted.clauses.push_back(c.theory.clauses[i]);
    }
    auto sb = spatial::break_symmetries(c.program, asserted, extra);
    all.insert(all.end(), sb.constraints.begin(), sb.constraints.end());
  }
  return smt::emit_smtlib(c.theory, all, options);
}

smt::EntailmentResult entails(const Compilation& c, const Formula& query, const smt::SolverConfig& config,
                              bool symmetry) {
  Formula negated = Formula::negate(query);
  smt::EntailmentResult r;
  r.solver = smt::run_solver(script_for(c, std::span<const Formula>(&negated, 1), {}, symmetry), config);
  if (r.solver.verdict == smt::Verdict::Unsat) r.entailment = smt::Entailment::Entailed;
  if (r.solver.verdict == smt::Verdict::Sat) r.entailment = smt::Entailment::NotEntailed;
  return r;
}

void fill_pruned(const smt::SmtScript& script, smt::Model& model) {
  if (model.has_approximations()) return;
  Interpretation I = model.interpretation();
  // Pruned definitions may mention each other; repeat until nothing new is settled.
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& clause : script.pruned) {
      if (model.booleans.count(clause.defines)) continue;
      const Formula& f = clause.formula;
      std::optional<bool> value;
      try {
        if (f.as<AtomFormula>()) {
          value = true;
        } else if (const Formula* inner = f.negated(); inner && inner->as<AtomFormula>()) {
          value = false;
        } else if (auto* a = f.as<AndFormula>(); a && a->items.size() == 2) {
          if (auto* imp = a->items[0].as<ImpliesFormula>()) value = evaluate(imp->consequent, I);
        }
      } catch (const Error&) {
        value.reset();  // depends on values not settled yet
      }
      if (value) {
        model.booleans[clause.defines] = *value;
        I.atoms[clause.defines] = *value;
        progress = true;
      }
    }
  }
}

}  // namespace aspmtqs::cli
